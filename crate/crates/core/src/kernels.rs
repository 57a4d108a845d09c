//! Subharmonic kernels `k(ζ, z) = log|ζ - z| + h(ζ, z)`, their potentials
//! against measures, suitability checks, and the majorant `Q` built from the
//! Bomash kernel of order 2.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_finite_point, Point};
use crate::measures::{box_mass, circle_mean, geometric_breaks, Measure, RadialMeasure, RadialWeight};
use crate::quadrature::{full_circle, integrate, integrate_polar, periodic_mean_with, QuadConfig};

/// Below this `|X|` the factor `(1 - (1-X)^s)/X` is taken from its Taylor series.
const SERIES_CUTOFF: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "snake_case")]
pub enum KernelId {
    /// `log|ζ - z|` on the plane.
    Log,
    /// `log|B_ζ(z)|`, minus the Green's function of the disk.
    Blaschke,
    /// `log|B̄_ζ(z)| = log|B_ζ(z)| + log|ζ|`.
    BlaschkeBar,
    Dzhrbashian { p: u32 },
    Horowitz,
    Beller { s: f64 },
    Bomash { s: f64 },
    Korenblum,
    HadamardWeierstrass { q: u32 },
    /// Genus-`q_n` Hadamard factors on the annuli `r_{n-1} ≤ |ζ| < r_n`, with
    /// `log|ζ - z|` below `r0`. An empty `genera` means `q_n = n`.
    Weierstrass {
        r0: f64,
        radii: Vec<f64>,
        #[serde(default)]
        genera: Vec<u32>,
    },
}

impl KernelId {
    /// Builds a kernel from a CLI-style name and optional numeric parameter.
    pub fn from_name(name: &str, param: Option<f64>) -> Result<Self> {
        let need = |what: &str| {
            param.ok_or_else(|| Error::Config(format!("kernel '{name}' needs --param ({what})")))
        };
        let int = |v: f64| -> Result<u32> {
            if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as u32)
            } else {
                Err(Error::Config(format!("kernel '{name}' needs a nonnegative integer, got {v}")))
            }
        };
        let k = match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "log" => KernelId::Log,
            "blaschke" => KernelId::Blaschke,
            "blaschke_bar" => KernelId::BlaschkeBar,
            "dzhrbashian" => KernelId::Dzhrbashian { p: int(need("p")?)? },
            "horowitz" => KernelId::Horowitz,
            "beller" => KernelId::Beller { s: need("s")? },
            "bomash" => KernelId::Bomash { s: need("s")? },
            "korenblum" => KernelId::Korenblum,
            "hadamard_weierstrass" => KernelId::HadamardWeierstrass { q: int(need("q")?)? },
            other => return Err(Error::Config(format!("unknown kernel '{other}'"))),
        };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            KernelId::Beller { s } if !(*s > 0.0 && *s <= 6.0) => {
                Err(Error::Domain(format!("Beller kernel needs 0 < s <= 6, got {s}")))
            }
            KernelId::Bomash { s } if !(*s >= 1.0 && s.is_finite()) => {
                Err(Error::Domain(format!("Bomash kernel needs s >= 1, got {s}")))
            }
            KernelId::Weierstrass { r0, radii, genera } => {
                if !(*r0 > 0.0 && r0.is_finite()) {
                    return Err(Error::Domain(format!("Weierstrass kernel needs r0 > 0, got {r0}")));
                }
                let mut prev = *r0;
                for &r in radii {
                    if !(r > prev && r.is_finite()) {
                        return Err(Error::Domain("Weierstrass radii must increase from r0".into()));
                    }
                    prev = r;
                }
                if !genera.is_empty() && genera.len() != radii.len() {
                    return Err(Error::Domain(format!(
                        "Weierstrass kernel has {} radii but {} genera",
                        radii.len(),
                        genera.len()
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Kernels defined for `z` in the whole plane rather than the unit disk.
    pub fn is_planar(&self) -> bool {
        matches!(
            self,
            KernelId::Log | KernelId::HadamardWeierstrass { .. } | KernelId::Weierstrass { .. }
        )
    }

    /// Kernels whose support excludes `ζ = 0`.
    pub fn excludes_origin(&self) -> bool {
        matches!(
            self,
            KernelId::BlaschkeBar
                | KernelId::Dzhrbashian { .. }
                | KernelId::Bomash { .. }
                | KernelId::Korenblum
                | KernelId::HadamardWeierstrass { .. }
        )
    }

    fn check(&self, zeta: Point, z: Point) -> Result<()> {
        self.validate()?;
        if !is_finite_point(zeta) || !is_finite_point(z) {
            return Err(Error::Domain("non-finite argument".into()));
        }
        if self.excludes_origin() && zeta == Point::new(0.0, 0.0) {
            return Err(Error::Domain("ζ = 0 is outside the support of this kernel".into()));
        }
        if !self.is_planar() && (zeta.norm() >= 1.0 || z.norm() >= 1.0) {
            return Err(Error::Domain(format!(
                "ζ = {zeta}, z = {z} must lie in the unit disk"
            )));
        }
        Ok(())
    }
}

/// A kernel pole `ζ` together with `|ζ|` and `1 - |ζ|²`, which integrators
/// supply exactly from polar coordinates.
#[derive(Debug, Clone, Copy)]
struct Source {
    p: Point,
    abs: f64,
    gap: f64,
}

impl Source {
    fn point(p: Point) -> Self {
        Self {
            p,
            abs: p.norm(),
            gap: 1.0 - p.norm_sqr(),
        }
    }

    fn polar(t: f64, theta: f64) -> Self {
        Self {
            p: Point::from_polar(t, theta),
            abs: t,
            gap: (1.0 - t) * (1.0 + t),
        }
    }
}

/// `B_ζ(z)`, with `B_0(z) = -z`.
fn blaschke_factor(src: Source, z: Point) -> Point {
    let zeta = src.p;
    if src.abs == 0.0 {
        return -z;
    }
    (zeta - z) / (1.0 - zeta.conj() * z) * (src.abs / zeta)
}

/// `1 - B̄_ζ(z) = (1 - |ζ|²)/(1 - ζ̄z)`.
fn bar_complement(src: Source, z: Point) -> Point {
    Point::new(src.gap, 0.0) / (1.0 - src.p.conj() * z)
}

/// `log|1 - u|`, accurate when `u` is small.
fn log_abs_one_minus(u: Point) -> f64 {
    if u.norm() < 0.5 {
        0.5 * (u.norm_sqr() - 2.0 * u.re).ln_1p()
    } else {
        (1.0 - u).norm().ln()
    }
}

/// Generalized binomial coefficient `C(s, k)`.
fn binom(s: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (s - j as f64) / (j as f64 + 1.0))
}

/// `φ_s(X) = (1 - (1-X)^s)/X`, holomorphic and `φ_s(0) = s`.
fn phi(s: f64, x: Point, one_minus_x: Point) -> Point {
    if x.norm() < SERIES_CUTOFF {
        let mut sum = Point::new(0.0, 0.0);
        let mut pow = Point::new(1.0, 0.0);
        for k in 1..=7u32 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += pow * (sign * binom(s, k));
            pow *= x;
        }
        sum
    } else {
        (1.0 - power(one_minus_x, s)) / x
    }
}

fn power(w: Point, s: f64) -> Point {
    if s.fract() == 0.0 && s.abs() <= 64.0 {
        w.powi(s as i32)
    } else {
        w.powf(s)
    }
}

/// `log|1 - (1-X)^s|`.
fn log_one_minus_power(s: f64, x: Point, one_minus_x: Point) -> f64 {
    if x.norm() < SERIES_CUTOFF {
        x.norm().ln() + phi(s, x, one_minus_x).norm().ln()
    } else {
        log_abs_one_minus(power(one_minus_x, s))
    }
}

/// `log|B̄_ζ(z)|` with full relative accuracy both near the pole and near the circle.
fn log_bbar(src: Source, z: Point) -> f64 {
    let zeta = src.p;
    let w = bar_complement(src, z);
    if w.norm() < 0.5 {
        log_abs_one_minus(w)
    } else {
        (zeta.conj() * (zeta - z) / (1.0 - zeta.conj() * z)).norm().ln()
    }
}

/// `log|B_ζ(z)|`.
fn log_b(src: Source, z: Point) -> f64 {
    let zeta = src.p;
    let den = (1.0 - zeta.conj() * z).norm_sqr();
    let gap = src.gap * (1.0 - z.norm_sqr()) / den;
    if gap < 0.5 {
        0.5 * (-gap).ln_1p()
    } else {
        0.5 * ((zeta - z).norm_sqr() / den).ln()
    }
}

/// `Re (z/ζ)^k / k` summed over `k = 1..=q`.
fn hadamard_sum(zeta: Point, z: Point, q: u32) -> f64 {
    let r = z / zeta;
    let mut pow = Point::new(1.0, 0.0);
    let mut sum = 0.0;
    for k in 1..=q {
        pow *= r;
        sum += pow.re / k as f64;
    }
    sum
}

fn weierstrass_genus(r0: f64, radii: &[f64], genera: &[u32], t: f64) -> Option<u32> {
    if t < r0 {
        return None;
    }
    let n = radii.partition_point(|&r| r <= t);
    if genera.is_empty() {
        Some(n as u32 + 1)
    } else {
        Some(genera[n.min(genera.len() - 1)])
    }
}

/// `k(ζ, z)`; `-∞` exactly at the logarithmic pole `z = ζ`.
pub fn eval_kernel(k: &KernelId, zeta: Point, z: Point) -> Result<f64> {
    k.check(zeta, z)?;
    Ok(eval_src(k, Source::point(zeta), z))
}

fn eval_src(k: &KernelId, src: Source, z: Point) -> f64 {
    let zeta = src.p;
    if zeta == z {
        return f64::NEG_INFINITY;
    }
    match k {
        KernelId::Log => (zeta - z).norm().ln(),
        KernelId::Blaschke => log_b(src, z),
        KernelId::BlaschkeBar => log_bbar(src, z),
        KernelId::Dzhrbashian { p } => {
            let w = bar_complement(src, z);
            if w.norm() < 0.5 {
                // log|1-w| + Σ_{k≤p} Re w^k/k = -Re Σ_{k>p} w^k/k
                let mut pow = w.powi(*p as i32);
                let mut tail = 0.0;
                for k in (*p + 1).. {
                    pow *= w;
                    let term = pow.re / k as f64;
                    tail += term;
                    if pow.norm() / (k as f64) < 1e-18 * tail.abs().max(1e-300) || k > *p + 200 {
                        break;
                    }
                }
                -tail
            } else {
                log_bbar(src, z) + hadamard_like(w, *p)
            }
        }
        KernelId::Horowitz => beller(2.0, src, z),
        KernelId::Beller { s } => beller(*s, src, z),
        KernelId::Bomash { s } => {
            let w = bar_complement(src, z);
            log_one_minus_power(*s, 1.0 - w, w)
        }
        KernelId::Korenblum => {
            let u = zeta / src.abs;
            log_b(src, z) - src.abs.ln() * ((u + z) / (u - z)).re
        }
        KernelId::HadamardWeierstrass { q } => log_abs_one_minus(z / zeta) + hadamard_sum(zeta, z, *q),
        KernelId::Weierstrass { r0, radii, genera } => {
            match weierstrass_genus(*r0, radii, genera, src.abs) {
                None => (zeta - z).norm().ln(),
                Some(q) => log_abs_one_minus(z / zeta) + hadamard_sum(zeta, z, q),
            }
        }
    }
}

fn hadamard_like(w: Point, p: u32) -> f64 {
    let mut pow = Point::new(1.0, 0.0);
    let mut sum = 0.0;
    for k in 1..=p {
        pow *= w;
        sum += pow.re / k as f64;
    }
    sum
}

fn beller(s: f64, src: Source, z: Point) -> f64 {
    let b = blaschke_factor(src, z);
    log_one_minus_power(s, b, 1.0 - b)
}

/// `h(ζ, z) = k(ζ, z) - log|ζ - z|`, from closed forms (finite at `z = ζ`).
pub fn harmonic_component(k: &KernelId, zeta: Point, z: Point) -> Result<f64> {
    k.check(zeta, z)?;
    Ok(harmonic_src(k, Source::point(zeta), z))
}

fn harmonic_src(k: &KernelId, src: Source, z: Point) -> f64 {
    let zeta = src.p;
    let log_den = || (1.0 - zeta.conj() * z).norm().ln();
    match k {
        KernelId::Log => 0.0,
        KernelId::Blaschke => -log_den(),
        KernelId::BlaschkeBar => src.abs.ln() - log_den(),
        KernelId::Dzhrbashian { p } => {
            src.abs.ln() - log_den() + hadamard_like(bar_complement(src, z), *p)
        }
        KernelId::Horowitz | KernelId::Beller { .. } => {
            let s = if let KernelId::Beller { s } = k { *s } else { 2.0 };
            let b = blaschke_factor(src, z);
            phi(s, b, 1.0 - b).norm().ln() - log_den()
        }
        KernelId::Bomash { s } => {
            let w = bar_complement(src, z);
            src.abs.ln() - log_den() + phi(*s, 1.0 - w, w).norm().ln()
        }
        KernelId::Korenblum => {
            let u = zeta / src.abs;
            -log_den() - src.abs.ln() * ((u + z) / (u - z)).re
        }
        KernelId::HadamardWeierstrass { q } => -src.abs.ln() + hadamard_sum(zeta, z, *q),
        KernelId::Weierstrass { r0, radii, genera } => {
            match weierstrass_genus(*r0, radii, genera, src.abs) {
                None => 0.0,
                Some(q) => -src.abs.ln() + hadamard_sum(zeta, z, q),
            }
        }
    }
}

/// `log|1 - w²|` with `w = (1-|ζ|²)/(1-ζ̄z)`.
pub fn bomash2_hba(zeta: Point, z: Point) -> f64 {
    let w = bar_complement(Source::point(zeta), z);
    (1.0 - w * w).norm().ln()
}

/// `log(|ζ||ζ-z||2-|ζ|²-ζ̄z| / |1-ζ̄z|²)`.
pub fn bomash2_hbb(zeta: Point, z: Point) -> f64 {
    let num = zeta.norm() * (zeta - z).norm() * (2.0 - zeta.norm_sqr() - zeta.conj() * z).norm();
    (num / (1.0 - zeta.conj() * z).norm_sqr()).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Suitability {
    Convergent,
    Divergent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuitabilityReport {
    /// `(cutoff, truncated integral)` along the ladder `1 - 2^-j`.
    pub ladder: Vec<(f64, f64)>,
    /// Extrapolated value of the integral (last ladder value when divergent).
    pub limit: f64,
    pub verdict: Suitability,
}

/// Cutoff ladder `1 - 2^-j`, `j = 1..=20`.
pub const LADDER_LEVELS: i32 = 20;

/// `∫_a^b ν^rad(t) t^{-m} dt` for `m ≥ 1`, as a Stieltjes integral against `ν`.
fn weighted_cumulative(nu: &Measure, a: f64, b: f64, m: u32, cfg: QuadConfig) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let anti = |x: f64| -> f64 {
        if m == 1 {
            x.ln()
        } else {
            x.powi(1 - m as i32) / (1.0 - m as f64)
        }
    };
    let gb = anti(b);
    let f = |tau: f64| -> f64 {
        let lo = tau.max(a);
        if lo >= b {
            0.0
        } else {
            gb - anti(lo)
        }
    };
    nu.radial_integral(&f, 0.0, b, cfg)
}

/// Value of the kernel's suitability integral(s) truncated at `cutoff`.
/// Integrals that cannot be evaluated (non-integrable singularities) are `+∞`.
pub fn suitability_margin(k: &KernelId, nu: &Measure, cutoff: f64) -> f64 {
    suitability_margin_impl(k, nu, cutoff).unwrap_or(f64::INFINITY)
}

fn suitability_margin_impl(k: &KernelId, nu: &Measure, c: f64) -> Result<f64> {
    let cfg = QuadConfig::with_tol(1e-12);
    let small = |nu: &Measure| nu.log_potential_profile(c.min(0.5));
    let power = |e: f64| {
        let f = move |t: f64| (1.0 - t).powf(e);
        nu.radial_integral(&f, 0.0, c, cfg)
    };
    Ok(match k {
        KernelId::Log => nu.radial_integral(&|_| 1.0, 0.0, c, cfg)?,
        KernelId::Blaschke | KernelId::BlaschkeBar => power(1.0)?,
        KernelId::Dzhrbashian { p } => power(*p as f64 + 1.0)? + small(nu),
        KernelId::Horowitz => power(2.0)?,
        KernelId::Beller { s } => power(*s)?,
        KernelId::Bomash { s } => power(*s)? + small(nu),
        KernelId::Korenblum => power(2.0)? + small(nu),
        KernelId::HadamardWeierstrass { q } => {
            let inner = weighted_cumulative(nu, 0.0, c, q + 1, cfg)?;
            inner + nu.cumulative(c) / (*q as f64 + 1.0)
        }
        KernelId::Weierstrass { r0, radii, genera } => {
            let mut sum = 0.0;
            let mut lo = *r0;
            let mut n = 0usize;
            while lo < c {
                let hi = radii.get(n).copied().unwrap_or(f64::INFINITY).min(c);
                let q = weierstrass_genus(*r0, radii, genera, lo).unwrap_or(0);
                sum += weighted_cumulative(nu, lo, hi, q + 2, cfg)?;
                lo = hi;
                n += 1;
            }
            sum
        }
    })
}

/// Decides suitability from the growth of the truncated integrals along the
/// cutoff ladder.
pub fn suitability(k: &KernelId, nu: &Measure) -> SuitabilityReport {
    if nu.is_finite_sum() {
        let v = suitability_margin(k, nu, 1.0);
        return SuitabilityReport {
            ladder: vec![(1.0, v)],
            limit: v,
            verdict: if v.is_finite() {
                Suitability::Convergent
            } else {
                Suitability::Divergent
            },
        };
    }
    let ladder: Vec<(f64, f64)> = (1..=LADDER_LEVELS)
        .map(|j| {
            let c = 1.0 - 0.5f64.powi(j);
            (c, suitability_margin(k, nu, c))
        })
        .collect();
    let v: Vec<f64> = ladder.iter().map(|x| x.1).collect();
    let n = v.len();
    if v.iter().any(|x| !x.is_finite()) {
        return SuitabilityReport {
            ladder,
            limit: f64::INFINITY,
            verdict: Suitability::Divergent,
        };
    }
    let d: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
    let (vj, dj, dprev) = (v[n - 1], d[d.len() - 1], d[d.len() - 2]);
    let verdict = if dj.abs() <= 1e-6 * vj.abs().max(1.0) {
        Suitability::Convergent
    } else if vj >= 1.1 * v[n - 6] && d[d.len() - 5..].iter().all(|&x| x > 0.0) && dj >= 0.5 * dprev {
        Suitability::Divergent
    } else {
        Suitability::Inconclusive
    };
    let limit = match verdict {
        Suitability::Divergent => vj,
        _ => {
            let r = if dprev != 0.0 { dj / dprev } else { 0.0 };
            if r > 0.0 && r < 1.0 {
                vj + dj * r / (1.0 - r)
            } else {
                vj
            }
        }
    };
    SuitabilityReport { ladder, limit, verdict }
}

/// Mean of `k(te^{iθ}, z)` over `θ`.
///
/// Near the circle `|ζ| = |z|` the pole is handled through
/// `(1/2π)∫ log|te^{iθ} - z| dθ = log max(t, |z|)`.
fn angular_mean(k: &KernelId, t: f64, z: Point, tol: f64) -> Result<f64> {
    k.check(Point::new(t, 0.0), z)?;
    let r = z.norm();
    let band = 0.5 * (1.0 - r).min(r.max(1e-3));
    // Rounding of the node angles limits the relative accuracy to about 1e-16/(1-t).
    let rtol = tol.max(4e-16 / (1.0 - t).abs().max(1e-300));
    if (t - r).abs() < band {
        let f = |theta: f64| harmonic_src(k, Source::polar(t, theta), z);
        Ok(t.max(r).ln() + periodic_mean_with(&f, rtol, 1e-300, 1 << 22)?)
    } else {
        let f = |theta: f64| eval_src(k, Source::polar(t, theta), z);
        Ok(periodic_mean_with(&f, rtol, 1e-300, 1 << 22)?)
    }
}

fn require_suitable(k: &KernelId, nu: &Measure) -> Result<()> {
    if suitability(k, nu).verdict == Suitability::Divergent {
        return Err(Error::Precondition(format!(
            "kernel {k:?} is not suitable for the measure (suitability integral diverges)"
        )));
    }
    Ok(())
}

/// `U_k^ν(z) = ∫ k(ζ, z) dν(ζ)`.
pub fn potential(k: &KernelId, nu: &Measure, z: Point, cfg: QuadConfig) -> Result<f64> {
    k.validate()?;
    match nu {
        Measure::Discrete(d) => {
            let mut sum = 0.0;
            for a in &d.atoms {
                sum += a.mass * eval_kernel(k, a.z, z)?;
            }
            Ok(sum)
        }
        Measure::Radial(RadialMeasure::Circles { circles }) => {
            let mut sum = 0.0;
            for c in circles {
                sum += c.mass * angular_mean(k, c.radius, z, 1e-13)?;
            }
            Ok(sum)
        }
        Measure::Radial(r @ RadialMeasure::PowerLog { .. }) => {
            if r.is_zero() {
                return Ok(0.0);
            }
            require_suitable(k, nu)?;
            let rz = z.norm();
            let failure = std::sync::OnceLock::new();
            let f = |t: f64| {
                angular_mean(k, t, z, 1e-13).unwrap_or_else(|e| {
                    let _ = failure.set(e);
                    f64::NAN
                })
            };
            let mut breaks = vec![rz];
            let band = 0.5 * (1.0 - rz).min(rz.max(1e-3));
            breaks.extend([rz - band, rz + band]);
            let v = r.radial_integral_with_breaks(&f, 0.0, 1.0, &breaks, cfg);
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            v
        }
    }
}

/// `Q_k^ν(z) = ∫ (k(ζ,0) - k(ζ,z))⁺ dν(ζ)`.
///
/// For `Bomash{2}` and a radial measure, the integral is taken in the rotated
/// frame `z = x > 0` over the region `t > (1-√(1-x²))/x`, `|θ| < arccos x`,
/// which contains the set where the integrand is positive.
pub fn q_function(k: &KernelId, nu: &Measure, z: Point, cfg: QuadConfig) -> Result<f64> {
    k.validate()?;
    if !is_finite_point(z) || (!k.is_planar() && z.norm() >= 1.0) {
        return Err(Error::Domain(format!("z = {z} is outside the kernel's domain")));
    }
    let zero = Point::new(0.0, 0.0);
    if z == zero || nu.is_zero() {
        return Ok(0.0);
    }
    let positive = |src: Source, at: Point| -> f64 {
        let d = eval_src(k, src, zero) - eval_src(k, src, at);
        if d.is_nan() {
            0.0
        } else {
            d.max(0.0)
        }
    };
    match nu {
        Measure::Discrete(d) => {
            let mut sum = 0.0;
            for a in &d.atoms {
                k.check(a.z, z)?;
                sum += a.mass * positive(Source::point(a.z), z);
            }
            Ok(sum)
        }
        Measure::Radial(r) => {
            require_suitable(k, nu)?;
            let x = z.norm();
            let at = Point::new(x, 0.0);
            k.check(Point::new(0.5, 0.0), at)?;
            let bomash2 = matches!(k, KernelId::Bomash { s } if *s == 2.0);
            let (t0, half) = if bomash2 {
                ((1.0 - (1.0 - x * x).sqrt()) / x, x.acos())
            } else {
                (0.0, PI)
            };
            let g = |t: f64, theta: f64| positive(Source::polar(t, theta), at);
            Ok(match r {
                RadialMeasure::Circles { circles } => {
                    let mut sum = 0.0;
                    for c in circles.iter().filter(|c| c.radius > t0) {
                        let h = |theta: f64| g(c.radius, theta);
                        sum += c.mass * integrate(&h, -half, half, &[0.0], cfg)?.value / TAU;
                    }
                    sum
                }
                RadialMeasure::PowerLog { p } => {
                    let top = 1.0 - 0.5f64.powi(50);
                    let f = |t: f64, theta: f64| g(t, theta) * p / ((1.0 - t) * (1.0 - t) * TAU);
                    let window = |_t: f64| vec![(-half, half)];
                    let mut breaks = geometric_breaks();
                    breaks.push(x);
                    if bomash2 {
                        integrate_polar(&f, t0, top, &breaks, &window, &[0.0], cfg)?.value
                    } else {
                        integrate_polar(&f, t0, top, &breaks, &full_circle, &[0.0], cfg)?.value
                    }
                }
            })
        }
    }
}

/// Membership in `D₂(x) = {ζ : |ζ|²(2-|ζ|²) > |B̄_ζ(x)||2-B̄_ζ(x)|}`.
pub fn d2_region_test(zeta: Point, x: f64) -> bool {
    let t2 = zeta.norm_sqr();
    let bbar = 1.0 - bar_complement(Source::point(zeta), Point::new(x, 0.0));
    t2 * (2.0 - t2) > bbar.norm() * (2.0 - bbar).norm()
}

/// Membership in `D₁(x) = {ζ : ρ(ζ, x) < |ζ|}`.
pub fn d1_region_test(zeta: Point, x: f64) -> bool {
    blaschke_factor(Source::point(zeta), Point::new(x, 0.0)).norm() < zeta.norm()
}

/// `C_ε = max{log(30/ε)/(1-ε), 12/ε}`.
pub fn q_constant(eps: f64) -> f64 {
    ((30.0 / eps).ln() / (1.0 - eps)).max(12.0 / eps)
}

/// Relative size of the Carleson box in the majorant of `Q`.
pub const Q_BOX_ALPHA: f64 = 6.0;
/// Smallest `|z|` at which the majorant of `Q` holds.
pub const Q_BOUND_MIN_RADIUS: f64 = 0.9;

/// `A_{M,ε}(z) - M(z) + C_ε b_M^{[6]}(z)`, an upper bound for `Q` of the Bomash
/// kernel of order 2 against the Riesz measure of `M`, valid for `|z| ≥ 9/10`.
pub fn q_upper_bound(m: &RadialWeight, z: Point, eps: f64, cfg: QuadConfig) -> Result<f64> {
    if !(z.norm() >= Q_BOUND_MIN_RADIUS && z.norm() < 1.0) {
        return Err(Error::Domain(format!(
            "|z| = {} is outside [{Q_BOUND_MIN_RADIUS}, 1)",
            z.norm()
        )));
    }
    let nu = Measure::Radial(m.riesz_measure()?);
    let f = |w: Point| m.eval(w);
    let a = circle_mean(&f, z, eps)?;
    let b = box_mass(&nu, z, Q_BOX_ALPHA, cfg)?;
    Ok(a - m.eval(z) + q_constant(eps) * b)
}
