//! Green's functions of unions of disks with pole at the origin, harmonic
//! measure by walk-on-spheres, and integrals of `g_D(·, 0)` against measures.
//!
//! A single disk always goes through the closed form. For a genuine union,
//! integrals of `g_D(·, 0)` against a measure `ν` use the Poisson–Jensen
//! identity
//!
//! ```text
//! ∫_D g_D(ζ, 0) dν(ζ) = ∫_{∂D} U dω_D(0, ·) - U(0)
//! ```
//!
//! where `U` is any subharmonic function near the closure of `D` with Riesz
//! measure `ν`, so one walk-on-spheres run from the origin suffices.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_finite_point, Disk, Point, UnionDomain};
use crate::measures::{Atom, DiscreteMeasure, Measure, RadialMeasure, RadialWeight, ZeroSequence};
use crate::quadrature::{integrate, integrate_polar, AngularWindow, QuadConfig};
use crate::rng::{derive_seed, walk_stream};

/// Largest tolerated fraction of walks that hit `max_steps`.
const MAX_OVERFLOW_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub seed: u64,
    pub walks: u64,
    #[serde(default = "default_shell")]
    pub shell: f64,
    #[serde(default = "default_max_steps")]
    pub max_steps: u64,
}

fn default_shell() -> f64 {
    1e-6
}

fn default_max_steps() -> u64 {
    100_000
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            walks: 100_000,
            shell: default_shell(),
            max_steps: default_max_steps(),
        }
    }
}

impl MonteCarloConfig {
    pub fn new(seed: u64, walks: u64) -> Self {
        Self {
            seed,
            walks,
            ..Self::default()
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.walks == 0 {
            return Err(Error::Config("walks must be positive".into()));
        }
        if !(self.shell > 0.0 && self.shell <= 1e-3) {
            return Err(Error::Config(format!("shell must lie in (0, 1e-3], got {}", self.shell)));
        }
        if self.max_steps < 10_000 {
            return Err(Error::Config(format!("max_steps must be >= 10000, got {}", self.max_steps)));
        }
        Ok(())
    }
}

/// Monte Carlo value with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError {
    pub value: f64,
    pub stderr: f64,
    #[serde(rename = "walks")]
    pub walks_used: u64,
}

impl EstimateWithError {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            stderr: 0.0,
            walks_used: 0,
        }
    }

    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let ss: f64 = samples.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            value: mean,
            stderr,
            walks_used: n as u64,
        }
    }
}

/// `g_D(ζ, pole)` for a single disk; `0` outside the closed disk, `+∞` at the pole.
pub fn green_disk(disk: &Disk, zeta: Point, pole: Point) -> Result<f64> {
    if !disk.contains(pole) {
        return Err(Error::Domain(format!("pole {pole} is not inside the disk")));
    }
    if !is_finite_point(zeta) {
        return Err(Error::Domain("non-finite point".into()));
    }
    if !disk.contains(zeta) {
        return Ok(0.0);
    }
    if zeta == pole {
        return Ok(f64::INFINITY);
    }
    let r = disk.radius;
    let num = r * r - (zeta - disk.center) * (pole - disk.center).conj();
    Ok((num.norm() / (r * (zeta - pole).norm())).ln().max(0.0))
}

/// One walk from `start`; the absorption point, or `None` on step overflow.
fn walk<R: Rng>(domain: &UnionDomain, start: Point, rng: &mut R, shell: f64, max_steps: u64) -> Option<Point> {
    let mut z = start;
    let mut last = domain.deepest_disk(z).map_or(0, |(i, _)| i);
    for _ in 0..max_steps {
        match domain.deepest_disk(z) {
            Some((i, depth)) if depth >= shell => {
                last = i;
                let theta: f64 = rng.gen_range(0.0..TAU);
                z += Point::from_polar(depth, theta);
            }
            Some((i, _)) => return Some(domain.disks[i].project_to_boundary(z)),
            None => return Some(domain.disks[last].project_to_boundary(z)),
        }
    }
    None
}

/// Absorption points of `cfg.walks` walks from `start`, in walk order.
pub fn wos_exit_points(domain: &UnionDomain, start: Point, cfg: &MonteCarloConfig) -> Result<Vec<Point>> {
    cfg.validate()?;
    collect_exits(domain, start, cfg)
}

fn collect_exits(domain: &UnionDomain, start: Point, cfg: &MonteCarloConfig) -> Result<Vec<Point>> {
    if !domain.contains(start) {
        return Err(Error::Domain(format!("start point {start} is not inside the domain")));
    }
    let exits: Vec<Option<Point>> = (0..cfg.walks)
        .into_par_iter()
        .map(|i| walk(domain, start, &mut walk_stream(cfg.seed, i), cfg.shell, cfg.max_steps))
        .collect();
    let overflow = exits.iter().filter(|e| e.is_none()).count() as u64;
    if overflow as f64 > MAX_OVERFLOW_FRACTION * cfg.walks as f64 {
        return Err(Error::WalkOverflow {
            overflow,
            walks: cfg.walks,
            max_steps: cfg.max_steps,
        });
    }
    Ok(exits.into_iter().flatten().collect())
}

/// `∫ f dω_D(start, ·)` by walk-on-spheres.
pub fn wos_integrate<F>(domain: &UnionDomain, start: Point, f: &F, cfg: &MonteCarloConfig) -> Result<EstimateWithError>
where
    F: Fn(Point) -> f64 + Sync + ?Sized,
{
    let exits = wos_exit_points(domain, start, cfg)?;
    let samples: Vec<f64> = exits.par_iter().map(|&p| f(p)).collect();
    Ok(EstimateWithError::from_samples(&samples))
}

fn require_origin_inside(domain: &UnionDomain) -> Result<()> {
    if !domain.contains(Point::new(0.0, 0.0)) {
        return Err(Error::Domain("the domain must contain the pole 0".into()));
    }
    Ok(())
}

/// `g_D(ζ, 0)` for a union of disks.
pub fn green_union(domain: &UnionDomain, zeta: Point, cfg: &MonteCarloConfig) -> Result<EstimateWithError> {
    green_union_impl(domain, zeta, cfg, false)
}

/// [`green_union`] without the closed-form shortcut for single disks.
pub fn green_union_monte_carlo(domain: &UnionDomain, zeta: Point, cfg: &MonteCarloConfig) -> Result<EstimateWithError> {
    green_union_impl(domain, zeta, cfg, true)
}

fn green_union_impl(domain: &UnionDomain, zeta: Point, cfg: &MonteCarloConfig, force_mc: bool) -> Result<EstimateWithError> {
    if zeta == Point::new(0.0, 0.0) {
        return Err(Error::Domain("ζ = 0 is the pole of the Green's function".into()));
    }
    require_origin_inside(domain)?;
    if !domain.contains(zeta) {
        return Ok(EstimateWithError::exact(0.0));
    }
    if let (Some(disk), false) = (domain.as_single_disk(), force_mc) {
        return Ok(EstimateWithError::exact(green_disk(disk, zeta, Point::new(0.0, 0.0))?));
    }
    let h = wos_integrate(domain, zeta, &|w: Point| w.norm().ln(), cfg)?;
    Ok(EstimateWithError {
        value: h.value - zeta.norm().ln(),
        ..h
    })
}

/// `Σ m_k g_D(λ_k, 0)` over the zeros inside the domain.
pub fn green_sum_over_sequence(domain: &UnionDomain, seq: &ZeroSequence, cfg: &MonteCarloConfig) -> Result<EstimateWithError> {
    seq.require_origin_free()?;
    let mut value = 0.0;
    let mut var = 0.0;
    let mut walks = 0;
    for (k, e) in seq.entries().iter().enumerate() {
        if !domain.contains(e.z) {
            continue;
        }
        let g = green_union(domain, e.z, &cfg.with_seed(derive_seed(cfg.seed, k as u64)))?;
        let m = e.m as f64;
        value += m * g.value;
        var += (m * g.stderr).powi(2);
        walks += g.walks_used;
    }
    Ok(EstimateWithError {
        value,
        stderr: var.sqrt(),
        walks_used: walks,
    })
}

fn disk_window(disk: &Disk, t: f64) -> AngularWindow {
    match disk.angular_window(t) {
        None => Vec::new(),
        Some((_, half)) if half >= PI => vec![(-PI, PI)],
        Some((mid, half)) => vec![(mid - half, mid + half)],
    }
}

/// `(1/2π) ∫ g_D(te^{iθ}, 0) dθ` for a single disk.
fn disk_circle_mean(disk: &Disk, t: f64, quad: QuadConfig) -> Result<f64> {
    let origin = Point::new(0.0, 0.0);
    let mut sum = 0.0;
    for (lo, hi) in disk_window(disk, t) {
        let f = |theta: f64| green_disk(disk, Point::from_polar(t, theta), origin).unwrap_or(f64::NAN);
        sum += integrate(&f, lo, hi, &[], quad)?.value;
    }
    Ok(sum / TAU)
}

/// `∫ g_D(ζ, 0) dν(ζ)`.
///
/// Exact quadrature for one disk, one walk-on-spheres run from the origin
/// otherwise.
pub fn green_integral(domain: &UnionDomain, nu: &Measure, cfg: &MonteCarloConfig) -> Result<EstimateWithError> {
    require_origin_inside(domain)?;
    let quad = QuadConfig::with_tol(1e-10);
    if nu.is_zero() {
        return Ok(EstimateWithError::exact(0.0));
    }
    let outer = domain.outer_radius();
    if outer >= 1.0 {
        return Err(Error::Domain("the domain must lie inside the unit disk".into()));
    }
    match nu {
        Measure::Discrete(d) => {
            let origin = Point::new(0.0, 0.0);
            if d.atoms.iter().any(|a| a.z == origin && a.mass != 0.0) {
                return Ok(EstimateWithError::exact(f64::INFINITY));
            }
            let mut value = 0.0;
            let mut var = 0.0;
            let mut walks = 0;
            for (k, a) in d.atoms.iter().enumerate() {
                if !domain.contains(a.z) {
                    continue;
                }
                let g = green_union(domain, a.z, &cfg.with_seed(derive_seed(cfg.seed, k as u64)))?;
                value += a.mass * g.value;
                var += (a.mass * g.stderr).powi(2);
                walks += g.walks_used;
            }
            Ok(EstimateWithError {
                value,
                stderr: var.sqrt(),
                walks_used: walks,
            })
        }
        Measure::Radial(r) => match domain.as_single_disk() {
            Some(disk) => Ok(EstimateWithError::exact(single_disk_integral(disk, r, quad)?)),
            None => {
                let u = |w: Point| r.log_potential_profile(w.norm());
                let est = wos_integrate(domain, Point::new(0.0, 0.0), &u, cfg)?;
                Ok(EstimateWithError {
                    value: est.value - u(Point::new(0.0, 0.0)),
                    ..est
                })
            }
        },
    }
}

fn single_disk_integral(disk: &Disk, r: &RadialMeasure, quad: QuadConfig) -> Result<f64> {
    let outer = disk.outer_radius();
    match r {
        RadialMeasure::Circles { circles } => {
            let mut sum = 0.0;
            for c in circles.iter().filter(|c| c.radius < outer) {
                sum += c.mass * disk_circle_mean(disk, c.radius, quad)?;
            }
            Ok(sum)
        }
        RadialMeasure::PowerLog { p } => {
            let origin = Point::new(0.0, 0.0);
            let f = |t: f64, theta: f64| {
                green_disk(disk, Point::from_polar(t, theta), origin).unwrap_or(f64::NAN) * p
                    / ((1.0 - t) * (1.0 - t) * TAU)
            };
            let window = |t: f64| disk_window(disk, t);
            let c = disk.center.norm();
            let inner = disk.radius - c;
            let breaks: Vec<f64> = [inner, c].into_iter().filter(|&b| b > 0.0).collect();
            Ok(integrate_polar(&f, 0.0, outer, &breaks, &window, &[], quad)?.value)
        }
    }
}

/// `κ̂(g_D(·, 0)) = ∫ g_D(ζ, 0) dν(ζ)` with `dν = (1/2π) dθ ⊗ dt/(1-t)²`.
pub fn kappa_hat(domain: &UnionDomain, cfg: &MonteCarloConfig) -> Result<EstimateWithError> {
    green_integral(domain, &Measure::Radial(RadialMeasure::PowerLog { p: 1.0 }), cfg)
}

/// `∫ g_D(ζ, 0) dν_M(ζ)` for the Riesz measure of `M`.
pub fn weighted_green_integral(domain: &UnionDomain, m: &RadialWeight, cfg: &MonteCarloConfig) -> Result<EstimateWithError> {
    green_integral(domain, &Measure::Radial(m.riesz_measure()?), cfg)
}

/// Sweeps every atom inside the domain onto its boundary: each becomes
/// `cfg.walks` equal atoms at walk-on-spheres exit points. Atoms outside stay.
pub fn balayage_discrete(mu: &DiscreteMeasure, domain: &UnionDomain, cfg: &MonteCarloConfig) -> Result<DiscreteMeasure> {
    let mut atoms = Vec::new();
    for (k, a) in mu.atoms.iter().enumerate() {
        if !domain.contains(a.z) {
            atoms.push(*a);
            continue;
        }
        let exits = wos_exit_points(domain, a.z, &cfg.with_seed(derive_seed(cfg.seed, k as u64)))?;
        let w = a.mass / exits.len() as f64;
        atoms.extend(exits.into_iter().map(|z| Atom { z, mass: w }));
    }
    Ok(DiscreteMeasure { atoms })
}
