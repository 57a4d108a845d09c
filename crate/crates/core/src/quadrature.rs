//! Adaptive Gauss–Kronrod quadrature in one dimension and nested polar
//! quadrature in two.
//!
//! Intervals are refined by largest error first. Final sums are taken over
//! intervals sorted by their left endpoint, and parallel node evaluation
//! collects into index order, so results are bitwise independent of the
//! number of worker threads.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Quadrature settings shared by every deterministic integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Target error, absolute below magnitude 1 and relative above.
    pub tol: f64,
    /// Cap on the number of subintervals of one adaptive integral.
    pub max_cells: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_cells: 200_000,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    fn inner(&self) -> Self {
        Self {
            tol: self.tol * 1e-2,
            max_cells: self.max_cells,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub cells: usize,
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk15<F>(f: &F, a: f64, b: f64, parallel: bool) -> (f64, f64)
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let nodes: [f64; 15] = std::array::from_fn(|i| match i.cmp(&7) {
        Ordering::Less => c - h * XGK[i],
        Ordering::Equal => c,
        Ordering::Greater => c + h * XGK[14 - i],
    });
    let vals: Vec<f64> = if parallel {
        nodes.par_iter().map(|&x| f(x)).collect()
    } else {
        nodes.iter().map(|&x| f(x)).collect()
    };
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, &v) in vals.iter().enumerate() {
        let k = if i <= 7 { i } else { 14 - i };
        kronrod += WGK[k] * v;
        if k % 2 == 1 && k < 7 {
            gauss += WG[k / 2] * v;
        }
    }
    gauss += WG[3] * vals[7];
    let value = kronrod * h;
    let mut error = ((kronrod - gauss) * h).abs();
    if !value.is_finite() || vals.iter().any(|v| !v.is_finite()) {
        error = f64::NAN;
    }
    (value, error)
}

/// Globally adaptive integral of `f` over `[a, b]`, split first at the
/// interior `breaks` (which may be unsorted and may fall outside).
pub fn integrate<F>(f: &F, a: f64, b: f64, breaks: &[f64], cfg: QuadConfig) -> Result<QuadEstimate>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    integrate_impl(f, a, b, breaks, cfg, false)
}

fn integrate_impl<F>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: QuadConfig,
    parallel: bool,
) -> Result<QuadEstimate>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    if b <= a {
        return Ok(QuadEstimate {
            value: 0.0,
            error: 0.0,
            cells: 0,
        });
    }
    let mut points: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    points.push(a);
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut heap = BinaryHeap::new();
    let mut done: Vec<Cell> = Vec::new();
    for w in points.windows(2) {
        let (value, error) = gk15(f, w[0], w[1], parallel);
        if error.is_nan() {
            return Err(Error::NonConvergence(format!(
                "non-finite integrand on [{}, {}]",
                w[0], w[1]
            )));
        }
        heap.push(Cell {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    let mut cells = heap.len();
    let mut total: f64 = heap.iter().map(|c| c.value).sum();
    let mut err: f64 = heap.iter().map(|c| c.error).sum();
    let mut iter = 0usize;
    loop {
        iter += 1;
        if iter.is_multiple_of(256) {
            // Refresh the running sums to shed accumulated cancellation.
            total = heap.iter().chain(done.iter()).map(|c| c.value).sum();
            err = heap.iter().chain(done.iter()).map(|c| c.error).sum();
        }
        let target = cfg.tol * total.abs().max(1.0);
        let open_err = err - done.iter().map(|c| c.error).sum::<f64>();
        if err <= target || heap.is_empty() || open_err <= 0.0 {
            if err > target {
                return Err(Error::Quadrature {
                    achieved: err,
                    tol: target,
                });
            }
            break;
        }
        if cells >= cfg.max_cells {
            return Err(Error::Quadrature {
                achieved: err,
                tol: target,
            });
        }
        let worst = heap.pop().expect("heap is nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 1e-15 * worst.a.abs().max(1.0) {
            done.push(worst);
            continue;
        }
        total -= worst.value;
        err -= worst.error;
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(f, lo, hi, parallel);
            if error.is_nan() {
                return Err(Error::NonConvergence(format!(
                    "non-finite integrand on [{lo}, {hi}]"
                )));
            }
            total += value;
            err += error;
            heap.push(Cell {
                a: lo,
                b: hi,
                value,
                error,
            });
        }
        cells += 1;
    }

    let mut all: Vec<Cell> = heap.into_vec();
    all.extend(done);
    all.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(QuadEstimate {
        value: all.iter().map(|c| c.value).sum(),
        error: all.iter().map(|c| c.error).sum(),
        cells: all.len(),
    })
}

/// Angular pieces `(θ_lo, θ_hi)` over which the inner integral runs at a radius.
pub type AngularWindow = Vec<(f64, f64)>;

/// Nested polar integral
/// `∫ dt ∫ dθ f(t, θ)` with `t` over `[t0, t1]` (split at `radial_breaks`) and
/// `θ` over `window(t)` (split at `angular_breaks`).
///
/// The radial GK nodes are evaluated in parallel.
pub fn integrate_polar<F, W>(
    f: &F,
    t0: f64,
    t1: f64,
    radial_breaks: &[f64],
    window: &W,
    angular_breaks: &[f64],
    cfg: QuadConfig,
) -> Result<QuadEstimate>
where
    F: Fn(f64, f64) -> f64 + Sync,
    W: Fn(f64) -> AngularWindow + Sync,
{
    let inner_cfg = cfg.inner();
    let outer = |t: f64| -> f64 {
        let mut sum = 0.0;
        for (lo, hi) in window(t) {
            let g = |theta: f64| f(t, theta);
            match integrate(&g, lo, hi, angular_breaks, inner_cfg) {
                Ok(e) => sum += e.value,
                Err(_) => return f64::NAN,
            }
        }
        sum
    };
    integrate_impl(&outer, t0, t1, radial_breaks, cfg, true)
}

/// Window covering the whole circle, starting at `-π`.
pub fn full_circle(_t: f64) -> AngularWindow {
    vec![(-PI, PI)]
}

/// Mean of a smooth `2π`-periodic function by the trapezoid rule, doubling
/// the node count until two successive values agree to `tol`.
pub fn periodic_mean<F>(f: &F, tol: f64, max_nodes: usize) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    periodic_mean_with(f, tol, tol, max_nodes)
}

/// [`periodic_mean`] with separate relative and absolute tolerances.
pub fn periodic_mean_with<F>(f: &F, rtol: f64, atol: f64, max_nodes: usize) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let mut n = 64usize;
    let mut prev = trapezoid_mean(f, n)?;
    while n < max_nodes {
        n *= 2;
        let cur = trapezoid_mean(f, n)?;
        if (cur - prev).abs() <= (rtol * cur.abs()).max(atol) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!(
        "circle mean did not settle with {max_nodes} nodes"
    )))
}

fn trapezoid_mean<F>(f: &F, n: usize) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let mut sum = 0.0;
    for k in 0..n {
        let v = f(TAU * k as f64 / n as f64);
        if !v.is_finite() {
            return Err(Error::NonConvergence(format!(
                "integrand is {v} on the sampling circle"
            )));
        }
        sum += v;
    }
    Ok(sum / n as f64)
}

/// Area average of `f` over the disk `D(center, radius)`.
pub fn disk_average<F>(f: &F, center: Point, radius: f64, cfg: QuadConfig) -> Result<f64>
where
    F: Fn(Point) -> f64 + Sync,
{
    let g = |rho: f64, theta: f64| rho * f(center + Point::from_polar(rho, theta));
    let est = integrate_polar(&g, 0.0, radius, &[], &full_circle, &[], cfg)?;
    Ok(est.value / (PI * radius * radius))
}
