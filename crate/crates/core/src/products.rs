//! Canonical products with prescribed zeros, kept as `log|f|`, and a grid
//! estimate of the `A^{-p}` growth norm.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::kernels::{eval_kernel, KernelId};
use crate::measures::ZeroSequence;

/// Radius of the disks about the zeros that the growth grid skips.
pub const ZERO_EXCLUSION: f64 = 1e-6;

/// `log|f(z)| = Σ m_k k(λ_k, z)` for the canonical product built from `k`.
pub fn log_product(k: &KernelId, seq: &ZeroSequence, z: Point) -> Result<f64> {
    let mut sum = 0.0;
    for e in seq.entries() {
        let v = eval_kernel(k, e.z, z)?;
        if v == f64::NEG_INFINITY {
            return Ok(v);
        }
        sum += e.m as f64 * v;
    }
    Ok(sum)
}

/// `Π B_λ(z)^m` with `B_λ(z) = (|λ|/λ)(λ - z)/(1 - λ̄z)` and `B_0(z) = -z`.
pub fn blaschke_product(seq: &ZeroSequence, z: Point) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("|z| must be < 1, got {}", z.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(seq.entries().iter().fold(one, |acc, e| {
        let factor = if e.z == Point::new(0.0, 0.0) {
            -z
        } else {
            (e.z.norm() / e.z) * (e.z - z) / (one - e.z.conj() * z)
        };
        acc * factor.powu(e.m)
    }))
}

/// Radii `1 - 2^-j` for `j = 1..=j_max` and `angles` equally spaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub j_max: u32,
    pub angles: u32,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { j_max: 10, angles: 256 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub p: f64,
    pub sup_value: f64,
    pub grid_spec: GridSpec,
    pub attained_at: Point,
}

/// Grid supremum of `log|f(z)| + p log(1 - |z|)`, skipping points within
/// [`ZERO_EXCLUSION`] of `exclude`. A lower bound for the true norm.
pub fn growth_norm<F>(logf: &F, p: f64, exclude: &[Point], grid: GridSpec) -> Result<GrowthReport>
where
    F: Fn(Point) -> f64 + Sync + ?Sized,
{
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::Precondition(format!("p must be finite and >= 0, got {p}")));
    }
    if grid.j_max == 0 || grid.angles == 0 || grid.j_max > 52 {
        return Err(Error::Config(format!("invalid grid {grid:?}")));
    }
    let n = grid.angles as usize;
    let values: Vec<(f64, Point)> = (1..=grid.j_max as i32)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(j, k)| {
            let gap = 0.5f64.powi(j);
            let z = Point::from_polar(1.0 - gap, TAU * k as f64 / n as f64);
            if exclude.iter().any(|l| (z - l).norm() < ZERO_EXCLUSION) {
                return (f64::NEG_INFINITY, z);
            }
            (logf(z) + p * gap.ln(), z)
        })
        .collect();
    let (sup_value, attained_at) = values
        .into_iter()
        .fold((f64::NEG_INFINITY, Point::new(0.0, 0.0)), |best, cur| if cur.0 > best.0 { cur } else { best });
    if sup_value.is_nan() || sup_value == f64::INFINITY {
        return Err(Error::NonConvergence(format!("growth supremum is {sup_value}")));
    }
    Ok(GrowthReport {
        p,
        sup_value,
        grid_spec: grid,
        attained_at,
    })
}
