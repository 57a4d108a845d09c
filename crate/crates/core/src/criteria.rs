//! Zero-set criteria evaluated over a family of test domains, plus the
//! Blaschke sum and a Poisson–Jensen identity check.
//!
//! A criterion compares `lhs(D)` with `rhs(D)` for every domain `D` of an
//! escalating family (typically disks of radii `1 - 2^-j`). "Bounded by some
//! constant" cannot be certified by a finite computation, so each report
//! carries a three-valued verdict read off the tail of the margin sequence:
//!
//! * PASS when the running maximum of the margin grows by at most
//!   `0.05 + 3σ` over each of the last three levels;
//! * FAIL when the raw margin grows by at least `0.5 + 3σ` over each of the
//!   last three levels;
//! * INCONCLUSIVE otherwise, or with fewer than four levels.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, UnionDomain};
use crate::green::{
    green_integral, green_sum_over_sequence, kappa_hat, weighted_green_integral, wos_integrate, EstimateWithError,
    MonteCarloConfig,
};
use crate::measures::{k_lambda, Measure, RadialWeight, ZeroSequence};
use crate::quadrature::{periodic_mean_with, QuadConfig};
use crate::rng::derive_seed;

/// Levels needed before PASS or FAIL can be declared.
pub const MIN_LEVELS: usize = 4;
/// Number of trailing increments the verdict inspects.
pub const TAIL_LEVELS: usize = 3;
/// Allowed growth of the running maximum per level for PASS.
pub const PASS_SLACK: f64 = 0.05;
/// Required growth of the margin per level for FAIL.
pub const FAIL_GROWTH: f64 = 0.5;

pub const VERDICT_RULE: &str = "PASS if the running max margin grows by <= 0.05 + 3*stderr over each of the last 3 levels; \
FAIL if the margin grows by >= 0.5 + 3*stderr over each of the last 3 levels; INCONCLUSIVE otherwise or with < 4 levels";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    Radial,
    Berezin,
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionRecord {
    pub domain: usize,
    /// `max |z|` over the closure of the domain.
    pub radius: f64,
    pub lhs: EstimateWithError,
    pub rhs: EstimateWithError,
    pub margin: f64,
}

impl CriterionRecord {
    fn new(domain: usize, radius: f64, lhs: EstimateWithError, rhs: EstimateWithError) -> Self {
        Self {
            domain,
            radius,
            lhs,
            rhs,
            margin: lhs.value - rhs.value,
        }
    }

    /// Standard error of the margin.
    pub fn stderr(&self) -> f64 {
        self.lhs.stderr.hypot(self.rhs.stderr)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: CriterionKind,
    pub records: Vec<CriterionRecord>,
    pub max_margin: f64,
    pub arg_max: usize,
    pub verdict: Verdict,
    pub rule: String,
}

impl CriterionReport {
    pub fn from_records(criterion: CriterionKind, records: Vec<CriterionRecord>) -> Self {
        let (arg_max, max_margin) = records
            .iter()
            .map(|r| (r.domain, r.margin))
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        Self {
            criterion,
            verdict: bounded_verdict(&records),
            records,
            max_margin,
            arg_max,
            rule: VERDICT_RULE.to_string(),
        }
    }
}

/// Verdict for records listed in escalation order.
pub fn bounded_verdict(records: &[CriterionRecord]) -> Verdict {
    let n = records.len();
    if n < MIN_LEVELS || records.iter().any(|r| !r.margin.is_finite()) {
        return Verdict::Inconclusive;
    }
    let tail = n - TAIL_LEVELS..n;
    let noise = |j: usize| 3.0 * records[j].stderr().hypot(records[j - 1].stderr());

    let fail = tail
        .clone()
        .all(|j| records[j].margin - records[j - 1].margin >= FAIL_GROWTH + noise(j));
    if fail {
        return Verdict::Fail;
    }
    let running_max: Vec<f64> = records
        .iter()
        .scan(f64::NEG_INFINITY, |m, r| {
            *m = m.max(r.margin);
            Some(*m)
        })
        .collect();
    if tail.clone().all(|j| running_max[j] - running_max[j - 1] <= PASS_SLACK + noise(j)) {
        return Verdict::Pass;
    }
    Verdict::Inconclusive
}

fn check_family(family: &[UnionDomain]) -> Result<()> {
    if family.is_empty() {
        return Err(Error::Precondition("the domain family is empty".into()));
    }
    for (index, d) in family.iter().enumerate() {
        d.check_admissible(0.0)
            .map_err(|reason| Error::InadmissibleDomain { index, reason })?;
    }
    Ok(())
}

fn evaluate<F>(kind: CriterionKind, family: &[UnionDomain], cfg: &MonteCarloConfig, record: F) -> Result<CriterionReport>
where
    F: Fn(&UnionDomain, &MonteCarloConfig) -> Result<(EstimateWithError, EstimateWithError)> + Sync,
{
    check_family(family)?;
    cfg.validate()?;
    let records = family
        .par_iter()
        .enumerate()
        .map(|(i, d)| {
            let (lhs, rhs) = record(d, &cfg.with_seed(derive_seed(cfg.seed, i as u64)))?;
            Ok(CriterionRecord::new(i, d.outer_radius(), lhs, rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CriterionReport::from_records(kind, records))
}

/// `Σ m_k g_D(λ_k, 0)` against `∫ g_D(ζ, 0) dν_M(ζ)` on every domain.
pub fn criterion_radial(
    seq: &ZeroSequence,
    m: &RadialWeight,
    family: &[UnionDomain],
    cfg: &MonteCarloConfig,
) -> Result<CriterionReport> {
    seq.require_origin_free()?;
    m.validate()?;
    evaluate(CriterionKind::Radial, family, cfg, |d, c| {
        Ok((green_sum_over_sequence(d, seq, c)?, weighted_green_integral(d, m, c)?))
    })
}

/// `∫ g_D(ζ, 0) B_Λ(ζ) dm(ζ)` against `p κ̂(g_D(·, 0))`, with `B_Λ` the
/// Berezin-type density of the zeros.
pub fn criterion_berezin(seq: &ZeroSequence, p: f64, family: &[UnionDomain], cfg: &MonteCarloConfig) -> Result<CriterionReport> {
    seq.require_origin_free()?;
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::InvalidWeight(format!("p must be finite and >= 0, got {p}")));
    }
    evaluate(CriterionKind::Berezin, family, cfg, |d, c| {
        let lhs = berezin_green_integral(d, seq, c)?;
        let rhs = if p == 0.0 {
            EstimateWithError::exact(0.0)
        } else {
            let k = kappa_hat(d, c)?;
            EstimateWithError {
                value: p * k.value,
                stderr: p * k.stderr,
                ..k
            }
        };
        Ok((lhs, rhs))
    })
}

/// `∫ g_D(ζ, 0) dν_u` against `∫ g_D(ζ, 0) dν_M` on every domain.
pub fn criterion_general(
    nu_u: &Measure,
    nu_m: &Measure,
    family: &[UnionDomain],
    cfg: &MonteCarloConfig,
) -> Result<CriterionReport> {
    evaluate(CriterionKind::General, family, cfg, |d, c| {
        Ok((green_integral(d, nu_u, c)?, green_integral(d, nu_m, c)?))
    })
}

/// `∫_D g_D(ζ, 0) B_Λ(ζ) dm(ζ)`.
///
/// `K_Λ` has Riesz measure `B_Λ dm` and `K_Λ(0) = 0`, so the integral equals
/// the harmonic-measure average of `K_Λ` over `∂D` seen from the origin. For
/// one disk that average is a Poisson-kernel quadrature; for a union it is a
/// walk-on-spheres estimate.
pub fn berezin_green_integral(domain: &UnionDomain, seq: &ZeroSequence, cfg: &MonteCarloConfig) -> Result<EstimateWithError> {
    if !domain.contains(Point::new(0.0, 0.0)) {
        return Err(Error::Domain("the domain must contain the pole 0".into()));
    }
    if seq.is_empty() {
        return Ok(EstimateWithError::exact(0.0));
    }
    let k = |z: Point| k_lambda(seq, z);
    match domain.as_single_disk() {
        Some(disk) => {
            let (c, rho) = (disk.center, disk.radius);
            let scale = rho * rho - c.norm_sqr();
            let f = |theta: f64| {
                let w = Point::from_polar(rho, theta);
                k(c + w) * scale / (w + c).norm_sqr()
            };
            Ok(EstimateWithError::exact(periodic_mean_with(&f, 1e-12, 1e-14, 1 << 22)?))
        }
        None => wos_integrate(domain, Point::new(0.0, 0.0), &k, cfg),
    }
}

/// `Σ m_k (1 - |λ_k|)`.
pub fn blaschke_sum(seq: &ZeroSequence) -> f64 {
    seq.entries().iter().map(|e| e.m as f64 * (1.0 - e.z.norm())).sum()
}

/// Test functions for [`poisson_jensen_residual`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "function", rename_all = "snake_case")]
pub enum PjFunction {
    /// `log|z - a|`.
    LogDistance { a: Point },
    /// `log|B(z)|` for the Blaschke product with the given zeros.
    LogBlaschke { zeros: ZeroSequence },
}

impl PjFunction {
    fn eval(&self, z: Point) -> f64 {
        match self {
            PjFunction::LogDistance { a } => (z - a).norm().ln(),
            PjFunction::LogBlaschke { zeros } => zeros
                .entries()
                .iter()
                .map(|e| e.m as f64 * ((e.z - z) / (Point::new(1.0, 0.0) - e.z.conj() * z)).norm().ln())
                .sum(),
        }
    }

    fn riesz_atoms(&self) -> Vec<(Point, f64)> {
        match self {
            PjFunction::LogDistance { a } => vec![(*a, 1.0)],
            PjFunction::LogBlaschke { zeros } => zeros.entries().iter().map(|e| (e.z, e.m as f64)).collect(),
        }
    }
}

/// `|u(0) - ∫ u dω + ∫ g_{D(0,r)}(·, 0) dν_u|` for `ω` the harmonic measure
/// of `D(0, r)` at the origin, which is normalized arc length on `|z| = r`.
pub fn poisson_jensen_residual(u: &PjFunction, r: f64, quad: QuadConfig) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius must lie in (0,1), got {r}")));
    }
    if let PjFunction::LogBlaschke { zeros } = u {
        zeros.validate()?;
    }
    let u0 = u.eval(Point::new(0.0, 0.0));
    if u0 == f64::NEG_INFINITY {
        return Err(Error::Precondition("u(0) = -∞: the origin is a zero of u".into()));
    }
    let boundary = |theta: f64| u.eval(Point::from_polar(r, theta));
    let mean = periodic_mean_with(&boundary, quad.tol, quad.tol, 1 << 22)?;
    let green: f64 = u
        .riesz_atoms()
        .into_iter()
        .filter(|(z, _)| z.norm() < r)
        .map(|(z, m)| m * (r / z.norm()).ln())
        .sum();
    Ok((u0 - mean + green).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Disk;
    use crate::green::green_disk;
    use crate::measures::berezin_density;
    use crate::quadrature::{full_circle, integrate_polar};
    use approx::assert_abs_diff_eq;

    fn p(re: f64, im: f64) -> Point {
        Point::new(re, im)
    }

    fn ladder(levels: i32) -> Vec<UnionDomain> {
        (1..=levels).map(|j| UnionDomain::centered(1.0 - 0.5f64.powi(j)).unwrap()).collect()
    }

    fn cfg() -> MonteCarloConfig {
        MonteCarloConfig::new(7, 20_000)
    }

    // Σ_{|λ|<r} m log(r/|λ|): the Green sum on D(0, r).
    fn green_sum_oracle(seq: &ZeroSequence, r: f64) -> f64 {
        seq.entries()
            .iter()
            .filter(|e| e.z.norm() < r)
            .map(|e| e.m as f64 * (r / e.z.norm()).ln())
            .sum()
    }

    fn berezin_oracle(seq: &ZeroSequence, r: f64) -> f64 {
        let sum: f64 = seq
            .entries()
            .iter()
            .map(|e| {
                let s = e.z.norm_sqr();
                e.m as f64 * (1.0 - s).powi(2) / (1.0 - s * r * r)
            })
            .sum();
        0.5 * r * r * sum
    }

    fn record(margin: f64, stderr: f64) -> CriterionRecord {
        CriterionRecord::new(0, 0.5, EstimateWithError { value: margin, stderr, walks_used: 1 }, EstimateWithError::exact(0.0))
    }

    fn verdict_of(margins: &[f64]) -> Verdict {
        let recs: Vec<_> = margins.iter().map(|&m| record(m, 0.0)).collect();
        bounded_verdict(&recs)
    }

    #[test]
    fn verdict_rule() {
        assert_eq!(verdict_of(&[0.0, 0.1, 0.12, 0.12, 0.12]), Verdict::Pass);
        assert_eq!(verdict_of(&[0.0, 0.1, 0.1, 0.1]), Verdict::Inconclusive);
        assert_eq!(verdict_of(&[1.0, 0.5, 0.2, 0.1]), Verdict::Pass);
        assert_eq!(verdict_of(&[0.0, 0.6, 1.2, 1.8]), Verdict::Fail);
        assert_eq!(verdict_of(&[0.0, 0.2, 0.4, 0.6]), Verdict::Inconclusive);
        assert_eq!(verdict_of(&[0.0, 0.0, 0.0]), Verdict::Inconclusive);
        assert_eq!(verdict_of(&[0.0, 0.0, 0.0, f64::INFINITY]), Verdict::Inconclusive);
        // Noise widens the PASS band.
        let noisy: Vec<_> = [0.0, 0.1, 0.2, 0.3].iter().map(|&m| record(m, 0.02)).collect();
        assert_eq!(bounded_verdict(&noisy), Verdict::Pass);
    }

    #[test]
    fn blaschke_sum_examples() {
        assert_abs_diff_eq!(blaschke_sum(&ZeroSequence::geometric(20)), 1.0 - 0.5f64.powi(20), epsilon = 1e-15);
        assert_eq!(blaschke_sum(&ZeroSequence::empty()), 0.0);
        let triple = ZeroSequence::from_points([(p(0.5, 0.0), 3)]).unwrap();
        assert_abs_diff_eq!(blaschke_sum(&triple), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn poisson_jensen_examples() {
        let q = QuadConfig::with_tol(1e-12);
        let cases = [
            PjFunction::LogDistance { a: p(0.3, 0.0) },
            PjFunction::LogBlaschke {
                zeros: ZeroSequence::from_points([(p(0.3, 0.0), 1)]).unwrap(),
            },
            PjFunction::LogDistance { a: p(0.7, 0.0) },
            PjFunction::LogBlaschke {
                zeros: ZeroSequence::from_points([(p(0.1, 0.2), 2), (p(-0.4, 0.35), 1), (p(0.0, -0.8), 1)]).unwrap(),
            },
        ];
        for u in &cases {
            let res = poisson_jensen_residual(u, 0.5, q).unwrap();
            assert!(res < 1e-6, "{u:?}: {res}");
        }
        let bad = PjFunction::LogDistance { a: p(0.0, 0.0) };
        assert!(matches!(poisson_jensen_residual(&bad, 0.5, q), Err(Error::Precondition(_))));
    }

    #[test]
    fn radial_pass_matches_summation_oracle() {
        let seq = ZeroSequence::geometric(20);
        let rep = criterion_radial(&seq, &RadialWeight::PowerLog { p: 0.0 }, &ladder(10), &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        for (j, r) in rep.records.iter().enumerate() {
            let radius = 1.0 - 0.5f64.powi(j as i32 + 1);
            assert_abs_diff_eq!(r.margin, green_sum_oracle(&seq, radius), epsilon = 1e-12);
            assert_eq!(r.margin, r.lhs.value - r.rhs.value);
        }
    }

    #[test]
    fn radial_fail_and_p_shift() {
        let seq = ZeroSequence::harmonic(2000);
        let family = ladder(10);
        let rep = criterion_radial(&seq, &RadialWeight::PowerLog { p: 0.0 }, &family, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        let last = rep.records.last().unwrap();
        assert_abs_diff_eq!(last.margin, green_sum_oracle(&seq, 1.0 - 0.5f64.powi(10)), epsilon = 1e-9);
        let shifted = criterion_radial(&seq, &RadialWeight::PowerLog { p: 2.0 }, &family, &cfg()).unwrap();
        assert_eq!(shifted.verdict, Verdict::Pass);
    }

    #[test]
    fn empty_sequence_passes_with_nonpositive_margins() {
        let rep = criterion_radial(&ZeroSequence::empty(), &RadialWeight::PowerLog { p: 1.0 }, &ladder(6), &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.records.iter().all(|r| r.margin <= 0.0 && r.lhs.value == 0.0));
    }

    #[test]
    fn rhs_is_linear_in_p() {
        let family = ladder(5);
        let seq = ZeroSequence::empty();
        let one = criterion_radial(&seq, &RadialWeight::PowerLog { p: 1.0 }, &family, &cfg()).unwrap();
        let three = criterion_radial(&seq, &RadialWeight::PowerLog { p: 3.0 }, &family, &cfg()).unwrap();
        for (a, b) in one.records.iter().zip(&three.records) {
            assert_abs_diff_eq!(b.rhs.value, 3.0 * a.rhs.value, epsilon = 1e-8 * b.rhs.value.max(1.0));
        }
    }

    #[test]
    fn superset_never_decreases_lhs() {
        let family = vec![
            UnionDomain::centered(0.8).unwrap(),
            UnionDomain::new(vec![Disk::centered(0.6).unwrap(), Disk::new(p(0.5, 0.2), 0.35).unwrap()]).unwrap(),
        ];
        let small = ZeroSequence::from_points([(p(0.3, 0.1), 1), (p(-0.2, 0.5), 2)]).unwrap();
        let big = small.merged(&ZeroSequence::from_points([(p(0.6, 0.25), 1)]).unwrap());
        let m = RadialWeight::PowerLog { p: 0.0 };
        let a = criterion_radial(&small, &m, &family, &cfg()).unwrap();
        let b = criterion_radial(&big, &m, &family, &cfg()).unwrap();
        for (x, y) in a.records.iter().zip(&b.records) {
            assert!(y.lhs.value >= x.lhs.value - 3.0 * x.lhs.stderr.hypot(y.lhs.stderr));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let family = ladder(3);
        let m = RadialWeight::PowerLog { p: 0.0 };
        let with_origin = ZeroSequence::from_points([(p(0.0, 0.0), 1)]).unwrap();
        assert!(criterion_radial(&with_origin, &m, &family, &cfg()).is_err());
        let mut bad = family.clone();
        bad.push(UnionDomain::single(Disk::new(p(0.5, 0.0), 0.2).unwrap()));
        match criterion_radial(&ZeroSequence::geometric(3), &m, &bad, &cfg()) {
            Err(Error::InadmissibleDomain { index, .. }) => assert_eq!(index, 3),
            other => panic!("expected inadmissible domain, got {other:?}"),
        }
    }

    #[test]
    fn berezin_lhs_against_oracles() {
        let cfg = cfg();
        assert_eq!(berezin_green_integral(&UnionDomain::centered(0.9).unwrap(), &ZeroSequence::empty(), &cfg).unwrap().value, 0.0);

        let seq = ZeroSequence::from_points([(p(0.5, 0.0), 1)]).unwrap();
        let d = UnionDomain::centered(0.9).unwrap();
        let lhs = berezin_green_integral(&d, &seq, &cfg).unwrap().value;
        assert_abs_diff_eq!(lhs, berezin_oracle(&seq, 0.9), epsilon = 1e-12);

        // Grid oracle: polar quadrature of g · density on an off-centre disk.
        let disk = Disk::new(p(0.15, -0.1), 0.7).unwrap();
        let origin = p(0.0, 0.0);
        let seq = ZeroSequence::from_points([(p(0.5, 0.2), 1), (p(-0.3, -0.6), 2)]).unwrap();
        let f = |rho: f64, th: f64| {
            let z = disk.center + Point::from_polar(rho, th);
            rho * green_disk(&disk, z, origin).unwrap() * berezin_density(&seq, z)
        };
        let r0 = disk.center.norm();
        let grid = integrate_polar(&f, 0.0, disk.radius, &[r0], &full_circle, &[], QuadConfig::with_tol(1e-7)).unwrap().value;
        let lhs = berezin_green_integral(&UnionDomain::single(disk), &seq, &cfg).unwrap().value;
        assert!((lhs - grid).abs() <= 1e-3 * grid, "{lhs} vs {grid}");
    }

    #[test]
    fn berezin_union_agrees_with_single_disk_path() {
        let seq = ZeroSequence::from_points([(p(0.5, 0.2), 1), (p(-0.3, -0.6), 2)]).unwrap();
        let d = Disk::centered(0.8).unwrap();
        let exact = berezin_green_integral(&UnionDomain::single(d), &seq, &cfg()).unwrap();
        let dup = UnionDomain::new(vec![d, d]).unwrap();
        let mc = berezin_green_integral(&dup, &seq, &MonteCarloConfig::new(3, 40_000)).unwrap();
        assert!((mc.value - exact.value).abs() <= 4.0 * mc.stderr + 1e-3, "{mc:?} vs {exact:?}");
    }

    #[test]
    fn berezin_dichotomy_agrees_with_radial() {
        let family = ladder(10);
        let m0 = RadialWeight::PowerLog { p: 0.0 };
        for seq in [ZeroSequence::geometric(20), ZeroSequence::harmonic(2000)] {
            let radial = criterion_radial(&seq, &m0, &family, &cfg()).unwrap();
            let berezin = criterion_berezin(&seq, 0.0, &family, &cfg()).unwrap();
            assert_eq!(radial.verdict, berezin.verdict);
            for (j, r) in berezin.records.iter().enumerate() {
                assert_abs_diff_eq!(r.lhs.value, berezin_oracle(&seq, 1.0 - 0.5f64.powi(j as i32 + 1)), epsilon = 1e-9);
            }
        }
        let shifted = criterion_berezin(&ZeroSequence::harmonic(2000), 2.0, &family, &cfg()).unwrap();
        assert_eq!(shifted.verdict, Verdict::Pass);
    }

    #[test]
    fn general_reduces_to_radial() {
        let family = ladder(6);
        let seq = ZeroSequence::geometric(12);
        let w = RadialWeight::PowerLog { p: 0.5 };
        let nu_m = Measure::Radial(w.riesz_measure().unwrap());
        let general = criterion_general(&Measure::counting(&seq), &nu_m, &family, &cfg()).unwrap();
        let radial = criterion_radial(&seq, &w, &family, &cfg()).unwrap();
        for (a, b) in general.records.iter().zip(&radial.records) {
            assert_abs_diff_eq!(a.margin, b.margin, epsilon = 1e-8);
        }
        let same = criterion_general(&nu_m, &nu_m, &family, &cfg()).unwrap();
        assert!(same.records.iter().all(|r| r.margin == 0.0));
        let zero = criterion_general(&Measure::zero(), &nu_m, &family, &cfg()).unwrap();
        assert!(zero.records.iter().all(|r| r.margin <= 0.0));
    }
}
