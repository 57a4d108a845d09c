//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::f64::consts::{PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use diskzeroes::criteria::{criterion_berezin, criterion_radial, poisson_jensen_residual, PjFunction, Verdict};
use diskzeroes::geometry::{CarlesonBox, Disk, Point, UnionDomain};
use diskzeroes::green::{green_disk, green_union_monte_carlo, kappa_hat, MonteCarloConfig};
use diskzeroes::kernels::{
    bomash2_hba, bomash2_hbb, d1_region_test, d2_region_test, eval_kernel, harmonic_component, q_constant,
    q_function, q_upper_bound, KernelId, Q_BOX_ALPHA,
};
use diskzeroes::measures::{berezin_density, box_mass, circle_mean, k_lambda, Measure, RadialWeight, ZeroSequence};
use diskzeroes::quadrature::QuadConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p(re: f64, im: f64) -> Point {
    Point::new(re, im)
}

fn random_disk_point(rng: &mut ChaCha8Rng, rmax: f64) -> Point {
    Point::from_polar(rmax * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI))
}

fn ladder(levels: i32) -> Vec<UnionDomain> {
    (1..=levels).map(|j| UnionDomain::centered(1.0 - 0.5f64.powi(j)).unwrap()).collect()
}

// Σ_{|λ|<r} m log(r/|λ|), the Green sum on D(0, r).
fn green_sum_oracle(seq: &ZeroSequence, r: f64) -> f64 {
    seq.entries()
        .iter()
        .filter(|e| e.z.norm() < r)
        .map(|e| e.m as f64 * (r / e.z.norm()).ln())
        .sum()
}

fn five_point_laplacian(f: &dyn Fn(Point) -> f64, z: Point, h: f64) -> f64 {
    (f(z + h) + f(z - h) + f(z + p(0.0, h)) + f(z - p(0.0, h)) - 4.0 * f(z)) / (h * h)
}

fn kernel_zoo() -> Vec<KernelId> {
    vec![
        KernelId::Log,
        KernelId::Blaschke,
        KernelId::BlaschkeBar,
        KernelId::Dzhrbashian { p: 0 },
        KernelId::Dzhrbashian { p: 2 },
        KernelId::Horowitz,
        KernelId::Beller { s: 1.5 },
        KernelId::Beller { s: 4.0 },
        KernelId::Bomash { s: 1.0 },
        KernelId::Bomash { s: 2.0 },
        KernelId::Bomash { s: 3.5 },
        KernelId::Korenblum,
        KernelId::HadamardWeierstrass { q: 1 },
        KernelId::Weierstrass {
            r0: 0.2,
            radii: vec![0.5, 0.8],
            genera: vec![],
        },
    ]
}

fn closed_form_vs_monte_carlo() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..20 {
        let rho = rng.gen_range(0.0..0.45);
        let center = Point::from_polar(rho, rng.gen_range(-PI..PI));
        let radius = rng.gen_range(rho + 0.02..0.999 - rho);
        let disk = Disk::new(center, radius).unwrap();
        let zeta = center + random_disk_point(&mut rng, 0.98 * radius);
        let exact = green_disk(&disk, zeta, p(0.0, 0.0)).unwrap();
        let cfg = MonteCarloConfig::new(1000 + i, 100_000);
        let mc = green_union_monte_carlo(&UnionDomain::single(disk), zeta, &cfg).map_err(|e| e.to_string())?;
        let err = (mc.value - exact).abs();
        let allowed = (3.0 * mc.stderr).max(1e-2);
        check(err <= allowed, format!("pair {i}: |{} - {exact}| = {err:.3e} > {allowed:.3e}", mc.value))?;
        worst = worst.max(err / allowed);
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("20 pairs, worst error/allowance {worst:.2}, {elapsed:.1?}"))
}

fn kappa_hat_identity() -> Outcome {
    let mut notes = Vec::new();
    for r in [0.3, 0.5, 0.9] {
        let oracle: f64 = (1..2000).map(|m| f64::powi(r, m) / m as f64).sum();
        let start = Instant::now();
        let k = kappa_hat(&UnionDomain::centered(r).unwrap(), &MonteCarloConfig::new(0, 1000)).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check((k.value - oracle).abs() <= 1e-3, format!("r={r}: {} vs {oracle}", k.value))?;
        check(k.stderr == 0.0, format!("r={r}: not on the deterministic path"))?;
        check(elapsed < Duration::from_secs(5), format!("r={r}: took {elapsed:?}"))?;
        notes.push(format!("r={r}: {:.3e}", (k.value - oracle).abs()));
    }
    Ok(notes.join(", "))
}

fn poisson_jensen() -> Outcome {
    let cases = [
        ("zero inside", PjFunction::LogDistance { a: p(0.3, 0.0) }),
        (
            "Blaschke factor",
            PjFunction::LogBlaschke {
                zeros: ZeroSequence::from_points([(p(0.3, 0.0), 1)]).unwrap(),
            },
        ),
        ("zero outside", PjFunction::LogDistance { a: p(0.7, 0.0) }),
    ];
    let mut notes = Vec::new();
    for (name, u) in &cases {
        let start = Instant::now();
        let res = poisson_jensen_residual(u, 0.5, QuadConfig::with_tol(1e-12)).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(res < 1e-6, format!("{name}: residual {res:e}"))?;
        check(elapsed < Duration::from_secs(1), format!("{name}: took {elapsed:?}"))?;
        notes.push(format!("{name} {res:.1e}"));
    }
    Ok(notes.join(", "))
}

fn blaschke_dichotomy() -> Outcome {
    let cfg = MonteCarloConfig::new(1, 10_000);
    let m0 = RadialWeight::PowerLog { p: 0.0 };

    let geo = ZeroSequence::geometric(20);
    let pass = criterion_radial(&geo, &m0, &ladder(10), &cfg).map_err(|e| e.to_string())?;
    for (j, rec) in pass.records.iter().enumerate() {
        let oracle = green_sum_oracle(&geo, 1.0 - 0.5f64.powi(j as i32 + 1));
        check((rec.margin - oracle).abs() <= 1e-9, format!("geometric level {j}: {} vs {oracle}", rec.margin))?;
    }
    check(pass.verdict == Verdict::Pass, format!("geometric verdict {}", pass.verdict))?;

    let harm = ZeroSequence::harmonic(2000);
    let fail = criterion_radial(&harm, &m0, &ladder(10), &cfg).map_err(|e| e.to_string())?;
    check(fail.verdict == Verdict::Fail, format!("harmonic verdict {}", fail.verdict))?;
    let pair = vec![UnionDomain::centered(0.9).unwrap(), UnionDomain::centered(1.0 - 0.5f64.powi(10)).unwrap()];
    let ends = criterion_radial(&harm, &m0, &pair, &cfg).map_err(|e| e.to_string())?;
    let (lo, hi) = (ends.records[0].margin, ends.records[1].margin);
    let (lo_oracle, hi_oracle) = (green_sum_oracle(&harm, 0.9), green_sum_oracle(&harm, 1.0 - 0.5f64.powi(10)));
    check((lo - lo_oracle).abs() <= 1e-9 && (hi - hi_oracle).abs() <= 1e-9, "harmonic margins disagree with summation")?;
    check(hi - lo >= 3.0, format!("harmonic growth {hi} - {lo} < 3"))?;

    check(
        pass.max_margin <= 1.0,
        format!(
            "geometric max margin {:.4} > 1.0 (summation oracle gives the same value; harmonic margins {lo:.4} at 0.9 and {hi:.4} at 1-2^-10)",
            pass.max_margin
        ),
    )?;
    Ok(format!("geometric PASS max margin {:.4}; harmonic FAIL {lo:.4} -> {hi:.4}", pass.max_margin))
}

fn p_shift() -> Outcome {
    let harm = ZeroSequence::harmonic(2000);
    let rep = criterion_radial(&harm, &RadialWeight::PowerLog { p: 2.0 }, &ladder(10), &MonteCarloConfig::new(1, 10_000))
        .map_err(|e| e.to_string())?;
    for (j, rec) in rep.records.iter().enumerate() {
        let r = 1.0 - 0.5f64.powi(j as i32 + 1);
        let oracle = green_sum_oracle(&harm, r);
        check((rec.lhs.value - oracle).abs() <= 1e-9, format!("level {j}: lhs {} vs {oracle}", rec.lhs.value))?;
    }
    check(rep.verdict == Verdict::Pass, format!("verdict {}", rep.verdict))?;
    Ok(format!("PASS, last margin {:.4}", rep.records.last().unwrap().margin))
}

fn kernel_coincidences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pairs = [
        (KernelId::Beller { s: 1.0 }, KernelId::Blaschke),
        (KernelId::Beller { s: 2.0 }, KernelId::Horowitz),
        (KernelId::Bomash { s: 1.0 }, KernelId::BlaschkeBar),
        (KernelId::Dzhrbashian { p: 0 }, KernelId::BlaschkeBar),
    ];
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(1.0);
    let start = Instant::now();
    for _ in 0..1000 {
        let zeta = random_disk_point(&mut rng, 1.0);
        let z = random_disk_point(&mut rng, 1.0);
        for (a, b) in &pairs {
            let x = eval_kernel(a, zeta, z).map_err(|e| e.to_string())?;
            let y = eval_kernel(b, zeta, z).map_err(|e| e.to_string())?;
            check(close(x, y), format!("{a:?} vs {b:?} at ({zeta}, {z}): {x} {y}"))?;
        }
        let (x, y) = (bomash2_hba(zeta, z), bomash2_hbb(zeta, z));
        check(close(x, y), format!("two Bomash-2 forms at ({zeta}, {z}): {x} {y}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("5 identities x 1000 points, {elapsed:.1?}"))
}

fn harmonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let zoo = kernel_zoo();
    for k in &zoo {
        let zeta = random_disk_point(&mut rng, 0.9) + p(0.05, 0.0);
        let singular = [1.0 / zeta.conj(), zeta / zeta.norm()];
        for _ in 0..100 {
            let z = random_disk_point(&mut rng, 0.9);
            let d = singular.iter().map(|s| (s - z).norm()).fold(1.0, f64::min);
            let f = |w: Point| harmonic_component(k, zeta, w).unwrap();
            let lap = five_point_laplacian(&f, z, 1e-3 * d);
            let scale = f(z).abs().max(1.0) / (d * d);
            check(lap.abs() <= 1e-4 * scale, format!("{k:?}: Δh = {lap:e} at {z}, scale {scale:e}"))?;
        }
        let mut tested = 0;
        while tested < 100 {
            let z = random_disk_point(&mut rng, 0.9);
            let f = |w: Point| eval_kernel(k, zeta, w).unwrap();
            // The trapezoid rule cannot settle when the pole sits on the circle.
            let Ok(mean) = circle_mean(&f, z, 1e-2 / (1.0 - z.norm())) else { continue };
            tested += 1;
            let at = f(z);
            check(at <= mean + 1e-10, format!("{k:?}: k(z) = {at} > circle mean {mean} at {z}"))?;
        }
    }
    Ok(format!("{} kernels, 100 Laplacian and 100 sub-mean points each", zoo.len()))
}

fn boundary_geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for &x in &[0.90, 0.95, 0.99] {
        let bx = CarlesonBox::new(p(x, 0.0), Q_BOX_ALPHA).unwrap();
        let mut accepted = 0;
        while accepted < 10_000 {
            let t = rng.gen_range((x - 8.0 * (1.0 - x)).max(0.0)..1.0);
            let theta = rng.gen_range(-8.0 * (1.0 - x)..8.0 * (1.0 - x));
            let zeta = Point::from_polar(t, theta);
            if !d2_region_test(zeta, x) {
                continue;
            }
            accepted += 1;
            check(bx.contains(zeta), format!("{zeta} in D2({x}) but not in Box_6"))?;
            check(d1_region_test(zeta, x), format!("{zeta} in D2({x}) but not in D1"))?;
        }
    }
    let m = RadialWeight::PowerLog { p: 1.0 };
    let nu = Measure::Radial(m.riesz_measure().unwrap());
    let quad = QuadConfig::with_tol(1e-3);
    let mut notes = Vec::new();
    for eps in [0.25f64, 0.5] {
        let c_eps = (30.0 / eps).ln() / (1.0 - eps);
        check((q_constant(eps) - c_eps.max(12.0 / eps)).abs() < 1e-12, format!("C_ε at ε={eps}"))?;
        for &x in &[0.92, 0.95, 0.98] {
            let z = p(x, 0.0);
            let q = q_function(&KernelId::Bomash { s: 2.0 }, &nu, z, quad).map_err(|e| e.to_string())?;
            let bound = q_upper_bound(&m, z, eps, quad).map_err(|e| e.to_string())?;
            check(q <= bound, format!("Q({x}) = {q} > {bound} at ε={eps}"))?;
            notes.push(format!("{q:.3}<={bound:.1}"));
        }
    }
    Ok(format!("3 x 10^4 samples inside; Q bounds {}", notes.join(" ")))
}

fn box_mass_closed_form() -> Outcome {
    let alpha = 7.0;
    let mut worst = 0.0f64;
    for pp in [1.0, 2.0] {
        let nu = Measure::Radial(RadialWeight::PowerLog { p: pp }.riesz_measure().unwrap());
        for r in [0.9, 0.95] {
            let got = box_mass(&nu, p(r, 0.0), alpha, QuadConfig::with_tol(1e-10)).map_err(|e| e.to_string())?;
            let want = alpha * pp * (1.0 + alpha) / PI;
            check((got - want).abs() <= 1e-6, format!("p={pp}, |z|={r}: {got} vs {want}"))?;
            worst = worst.max((got - want).abs());
        }
    }
    Ok(format!("worst deviation {worst:.1e}"))
}

fn berezin_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let seq = ZeroSequence::from_points(
        (0..8).map(|_| (Point::from_polar(rng.gen_range(0.1..0.95), rng.gen_range(-PI..PI)), rng.gen_range(1..3))),
    )
    .unwrap();
    let f = |z: Point| k_lambda(&seq, z);
    for _ in 0..100 {
        let z = random_disk_point(&mut rng, 0.95);
        let lap = five_point_laplacian(&f, z, 1e-4);
        let want = TAU * berezin_density(&seq, z);
        check((lap - want).abs() <= 0.01 * want, format!("ΔK = {lap} vs 2π·density {want} at {z}"))?;
    }
    let cfg = MonteCarloConfig::new(1, 10_000);
    let m0 = RadialWeight::PowerLog { p: 0.0 };
    let mut verdicts = Vec::new();
    for seq in [ZeroSequence::geometric(20), ZeroSequence::harmonic(2000)] {
        let radial = criterion_radial(&seq, &m0, &ladder(10), &cfg).map_err(|e| e.to_string())?;
        let berezin = criterion_berezin(&seq, 0.0, &ladder(10), &cfg).map_err(|e| e.to_string())?;
        check(radial.verdict == berezin.verdict, format!("radial {} vs Berezin {}", radial.verdict, berezin.verdict))?;
        verdicts.push(format!("{}/{}", radial.verdict, berezin.verdict));
    }
    Ok(format!("Laplacian within 1% at 100 points; verdicts {}", verdicts.join(", ")))
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_diskzeroes");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let general = dir.path().join("general.json");
    std::fs::write(
        &general,
        r#"{
  "nu_u": {"zeros": {"points": [{"z": [0.3, 0.1], "m": 1}, {"z": [-0.5, 0.4], "m": 2}]}},
  "nu_m": {"weight": {"kind": "power_log", "p": 1.0}},
  "family": {"random": {"seed": 7, "count": 5, "a": 0.5}},
  "mc": {"seed": 11, "walks": 4000}
}"#,
    )
    .map_err(|e| e.to_string())?;
    let green = dir.path().join("green.json");
    std::fs::write(
        &green,
        r#"{
  "domain": {"disks": [{"c": [0.0, 0.0], "r": 0.6}, {"c": [0.5, 0.2], "r": 0.35}]},
  "points": [[0.3, 0.0], [0.6, 0.25]],
  "mc": {"seed": 3, "walks": 20000}
}"#,
    )
    .map_err(|e| e.to_string())?;
    let run = |args: &[&str], config: &Path, threads: &str, out: &Path| -> Result<Vec<u8>, String> {
        let status = Command::new(bin)
            .args(args)
            .arg("--config")
            .arg(config)
            .args(["--threads", threads, "--out"])
            .arg(out)
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        check(status.code() == Some(0), format!("{args:?} exited with {status}"))?;
        std::fs::read(out).map_err(|e| e.to_string())
    };
    let mut runs = 0;
    for (args, config) in [(&["criterion", "general"][..], &general), (&["green-eval"][..], &green)] {
        for fmt in ["json", "csv"] {
            let mut outputs = Vec::new();
            for (i, threads) in ["1", "4", "1"].iter().enumerate() {
                let out = dir.path().join(format!("out{runs}_{i}.{fmt}"));
                let mut full = args.to_vec();
                full.extend(["--format", fmt]);
                outputs.push(run(&full, config, threads, &out)?);
            }
            runs += 1;
            check(
                outputs.windows(2).all(|w| w[0] == w[1]),
                format!("{args:?} --format {fmt} differs across reruns or --threads"),
            )?;
        }
    }
    Ok(format!("{runs} experiments x 3 runs (threads 1, 4, 1) byte-identical"))
}

fn main() {
    let criteria: Vec<Check> = vec![
        ("closed-form vs Monte Carlo Green's function", closed_form_vs_monte_carlo),
        ("kappa-hat identity on centered disks", kappa_hat_identity),
        ("Poisson-Jensen residuals", poisson_jensen),
        ("Blaschke dichotomy", blaschke_dichotomy),
        ("p-shift turns FAIL into PASS", p_shift),
        ("kernel coincidences", kernel_coincidences),
        ("harmonic and subharmonic kernel parts", harmonicity),
        ("boundary-region geometry and Q bound", boundary_geometry),
        ("radial box mass closed form", box_mass_closed_form),
        ("Berezin density and verdict agreement", berezin_consistency),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {name} ({detail})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
