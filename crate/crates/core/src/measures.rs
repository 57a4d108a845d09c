//! Zero sequences, radial weights and their Riesz measures, and the local
//! averages built on them (circle means, mollifiers, Carleson-box masses,
//! the Berezin-type density of a sequence).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_finite_point, CarlesonBox, Point, UnionDomain};
use crate::quadrature::{disk_average, integrate, periodic_mean, QuadConfig};

/// Largest geometric level `1 - 2^-k` used when a radial integral runs up to 1.
const GEOMETRIC_LEVELS: i32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroEntry {
    pub z: Point,
    pub m: u32,
}

/// Finite multiset of points of the unit disk, `{"points":[{"z":[re,im],"m":k}]}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ZeroSequence {
    #[serde(rename = "points")]
    entries: Vec<ZeroEntry>,
}

impl ZeroSequence {
    pub fn new(entries: Vec<ZeroEntry>) -> Result<Self> {
        let seq = Self { entries };
        seq.validate()?;
        Ok(seq)
    }

    pub fn from_points(points: impl IntoIterator<Item = (Point, u32)>) -> Result<Self> {
        Self::new(points.into_iter().map(|(z, m)| ZeroEntry { z, m }).collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `{1 - 2^-k : k = 1..=count}`, a Blaschke sequence.
    pub fn geometric(count: u32) -> Self {
        Self {
            entries: (1..=count)
                .map(|k| ZeroEntry {
                    z: Point::new(1.0 - 0.5f64.powi(k as i32), 0.0),
                    m: 1,
                })
                .collect(),
        }
    }

    /// `{1 - 1/(k+1) : k = 1..=count}`, whose Blaschke sum diverges.
    pub fn harmonic(count: u32) -> Self {
        Self {
            entries: (1..=count)
                .map(|k| ZeroEntry {
                    z: Point::new(1.0 - 1.0 / (k as f64 + 1.0), 0.0),
                    m: 1,
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            if !is_finite_point(e.z) || e.z.norm() >= 1.0 {
                return Err(Error::Domain(format!("zero {} is not in the unit disk", e.z)));
            }
            if e.m == 0 {
                return Err(Error::Domain(format!("zero {} has multiplicity 0", e.z)));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[ZeroEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_origin(&self) -> bool {
        self.entries.iter().any(|e| e.z == Point::new(0.0, 0.0))
    }

    pub fn require_origin_free(&self) -> Result<()> {
        if self.contains_origin() {
            return Err(Error::Precondition("the sequence must not contain 0".into()));
        }
        Ok(())
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.m as u64).sum()
    }

    /// Union of two sequences (multiplicities add).
    pub fn merged(&self, other: &ZeroSequence) -> ZeroSequence {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ZeroSequence { entries }
    }

    pub fn counting_measure(&self) -> DiscreteMeasure {
        DiscreteMeasure {
            atoms: self
                .entries
                .iter()
                .map(|e| Atom {
                    z: e.z,
                    mass: e.m as f64,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub z: Point,
    pub mass: f64,
}

/// Finite sum of point masses.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    pub fn mass_where(&self, pred: impl Fn(Point) -> bool) -> f64 {
        self.atoms.iter().filter(|a| pred(a.z)).map(|a| a.mass).sum()
    }

    pub fn mass_in_disk(&self, center: Point, radius: f64) -> f64 {
        self.mass_where(|z| (z - center).norm() < radius)
    }

    pub fn mass_in_box(&self, b: &CarlesonBox) -> f64 {
        self.mass_where(|z| b.contains(z))
    }

    pub fn mass_in_domain(&self, d: &UnionDomain) -> f64 {
        self.mass_where(|z| d.contains(z))
    }
}

/// Radial weight `M(|z|)`: increasing, convex in `log t`, nonnegative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialWeight {
    /// `M_p(t) = p log 1/(1-t)`, the weight of `A^{-p}`.
    PowerLog { p: f64 },
    /// Piecewise linear in `(log t, M)` through the knots, constant below the
    /// first knot and continued with the last slope above the last one.
    Tabulated { knots: Vec<(f64, f64)> },
}

impl RadialWeight {
    pub fn validate(&self) -> Result<()> {
        match self {
            RadialWeight::PowerLog { p } => {
                if !(*p >= 0.0 && p.is_finite()) {
                    return Err(Error::InvalidWeight(format!("p must be finite and >= 0, got {p}")));
                }
            }
            RadialWeight::Tabulated { knots } => {
                if knots.is_empty() {
                    return Err(Error::InvalidWeight("no knots".into()));
                }
                for (i, &(t, m)) in knots.iter().enumerate() {
                    if !(t > 0.0 && t < 1.0) || !(m >= 0.0) || !m.is_finite() {
                        return Err(Error::InvalidWeight(format!(
                            "knot {i} = ({t}, {m}) must have 0<t<1 and M>=0"
                        )));
                    }
                    if i > 0 && t <= knots[i - 1].0 {
                        return Err(Error::InvalidWeight("knot radii must increase".into()));
                    }
                }
                let slopes = log_slopes(knots);
                if slopes.iter().any(|&s| s < 0.0) {
                    return Err(Error::InvalidWeight("weight is not increasing".into()));
                }
                for w in slopes.windows(2) {
                    if w[1] < w[0] - 1e-12 * w[0].abs().max(1.0) {
                        return Err(Error::InvalidWeight("weight is not convex in log t".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            RadialWeight::PowerLog { p } => {
                if *p == 0.0 {
                    0.0
                } else {
                    -p * (-t).ln_1p()
                }
            }
            RadialWeight::Tabulated { knots } => {
                let slopes = log_slopes(knots);
                let (t0, m0) = knots[0];
                if t <= t0 {
                    return m0;
                }
                let i = knots.partition_point(|&(k, _)| k < t) - 1;
                let s = slopes.get(i).or(slopes.last()).copied().unwrap_or(0.0);
                let (ti, mi) = knots[i];
                mi + s * (t.ln() - ti.ln())
            }
        }
    }

    pub fn eval(&self, z: Point) -> f64 {
        self.value(z.norm())
    }

    /// Left derivative `M'_-(t)`.
    pub fn left_derivative(&self, t: f64) -> f64 {
        match self {
            RadialWeight::PowerLog { p } => p / (1.0 - t),
            RadialWeight::Tabulated { knots } => {
                if t <= knots[0].0 {
                    return 0.0;
                }
                let slopes = log_slopes(knots);
                let i = knots.partition_point(|&(k, _)| k < t) - 1;
                slopes.get(i).or(slopes.last()).copied().unwrap_or(0.0) / t
            }
        }
    }

    /// Riesz measure `dν = (1/2π) dθ ⊗ d(t M'_-(t))`.
    pub fn riesz_measure(&self) -> Result<RadialMeasure> {
        self.validate()?;
        Ok(match self {
            RadialWeight::PowerLog { p } => RadialMeasure::PowerLog { p: *p },
            RadialWeight::Tabulated { knots } => {
                let slopes = log_slopes(knots);
                let mut prev = 0.0;
                let mut circles = Vec::new();
                for (i, &s) in slopes.iter().enumerate() {
                    if s - prev > 0.0 {
                        circles.push(CircleAtom {
                            radius: knots[i].0,
                            mass: s - prev,
                        });
                    }
                    prev = s;
                }
                RadialMeasure::Circles { circles }
            }
        })
    }
}

fn log_slopes(knots: &[(f64, f64)]) -> Vec<f64> {
    knots
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0.ln() - w[0].0.ln()))
        .collect()
}

/// Mass spread uniformly over the circle `|ζ| = radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleAtom {
    pub radius: f64,
    pub mass: f64,
}

/// Rotation-invariant measure on the unit disk, described by `ν^rad`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialMeasure {
    /// Riesz measure of `M_p`: `dν^rad = p dt/(1-t)²`.
    PowerLog { p: f64 },
    /// Finitely many uniform circle masses.
    Circles { circles: Vec<CircleAtom> },
}

impl RadialMeasure {
    pub fn zero() -> Self {
        RadialMeasure::Circles { circles: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RadialMeasure::PowerLog { p } => *p == 0.0,
            RadialMeasure::Circles { circles } => circles.iter().all(|c| c.mass == 0.0),
        }
    }

    /// `ν^rad(t) = ν(D(t))` (open disk).
    pub fn cumulative(&self, t: f64) -> f64 {
        match self {
            RadialMeasure::PowerLog { p } => {
                if t >= 1.0 {
                    f64::INFINITY
                } else {
                    p * t / (1.0 - t)
                }
            }
            RadialMeasure::Circles { circles } => {
                circles.iter().filter(|c| c.radius < t).map(|c| c.mass).sum()
            }
        }
    }

    /// Density with respect to area measure, where it exists.
    pub fn area_density(&self, t: f64) -> Option<f64> {
        match self {
            RadialMeasure::PowerLog { p } => Some(p / (2.0 * PI * t * (1.0 - t).powi(2))),
            RadialMeasure::Circles { .. } => None,
        }
    }

    /// Stieltjes integral `∫_{[lo, hi]} f(t) dν^rad(t)`.
    ///
    /// Absolutely continuous parts are integrated on the geometric partition
    /// `1 - 2^-k`, stopping at `1 - 2^-50` when `hi = 1`.
    pub fn radial_integral<F>(&self, f: &F, lo: f64, hi: f64, cfg: QuadConfig) -> Result<f64>
    where
        F: Fn(f64) -> f64 + Sync + ?Sized,
    {
        self.radial_integral_with_breaks(f, lo, hi, &[], cfg)
    }

    /// [`radial_integral`](Self::radial_integral) with extra breakpoints for
    /// the absolutely continuous part.
    pub fn radial_integral_with_breaks<F>(
        &self,
        f: &F,
        lo: f64,
        hi: f64,
        breaks: &[f64],
        cfg: QuadConfig,
    ) -> Result<f64>
    where
        F: Fn(f64) -> f64 + Sync + ?Sized,
    {
        match self {
            RadialMeasure::PowerLog { p } => {
                if *p == 0.0 || hi <= lo {
                    return Ok(0.0);
                }
                let top = hi.min(1.0 - 0.5f64.powi(GEOMETRIC_LEVELS));
                let g = |t: f64| f(t) * p / ((1.0 - t) * (1.0 - t));
                let mut all = geometric_breaks();
                all.extend_from_slice(breaks);
                Ok(integrate(&g, lo.max(0.0), top, &all, cfg)?.value)
            }
            RadialMeasure::Circles { circles } => Ok(circles
                .iter()
                .filter(|c| c.radius >= lo && c.radius <= hi)
                .map(|c| c.mass * f(c.radius))
                .sum()),
        }
    }

    /// `∫₀^s log(s/t) dν^rad(t)`: the radial subharmonic function with
    /// Riesz measure `ν` that vanishes at the origin.
    pub fn log_potential_profile(&self, s: f64) -> f64 {
        match self {
            RadialMeasure::PowerLog { p } => {
                if *p == 0.0 {
                    0.0
                } else {
                    -p * (-s).ln_1p()
                }
            }
            RadialMeasure::Circles { circles } => circles
                .iter()
                .filter(|c| c.radius < s)
                .map(|c| c.mass * (s / c.radius).ln())
                .sum(),
        }
    }
}

/// Geometric breakpoints `1 - 2^-k`, `k = 1..=50`.
pub fn geometric_breaks() -> Vec<f64> {
    (1..=GEOMETRIC_LEVELS).map(|k| 1.0 - 0.5f64.powi(k)).collect()
}

/// Measures the criteria and kernels integrate against.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Radial(RadialMeasure),
    Discrete(DiscreteMeasure),
}

impl Measure {
    pub fn zero() -> Self {
        Measure::Discrete(DiscreteMeasure::default())
    }

    pub fn counting(seq: &ZeroSequence) -> Self {
        Measure::Discrete(seq.counting_measure())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Measure::Radial(r) => r.is_zero(),
            Measure::Discrete(d) => d.atoms.iter().all(|a| a.mass == 0.0),
        }
    }

    /// Mass of the open disk `D(t)`.
    pub fn cumulative(&self, t: f64) -> f64 {
        match self {
            Measure::Radial(r) => r.cumulative(t),
            Measure::Discrete(d) => d.mass_where(|z| z.norm() < t),
        }
    }

    /// `∫_{lo ≤ |ζ| ≤ hi} f(|ζ|) dν(ζ)`.
    pub fn radial_integral<F>(&self, f: &F, lo: f64, hi: f64, cfg: QuadConfig) -> Result<f64>
    where
        F: Fn(f64) -> f64 + Sync + ?Sized,
    {
        match self {
            Measure::Radial(r) => r.radial_integral(f, lo, hi, cfg),
            Measure::Discrete(d) => Ok(d
                .atoms
                .iter()
                .filter(|a| {
                    let t = a.z.norm();
                    t >= lo && t <= hi
                })
                .map(|a| a.mass * f(a.z.norm()))
                .sum()),
        }
    }
}

impl Measure {
    /// `∫₀^s ν^rad(t)/t dt = ∫_{|ζ|<s} log(s/|ζ|) dν(ζ)`; infinite when `ν` charges the origin.
    pub fn log_potential_profile(&self, s: f64) -> f64 {
        match self {
            Measure::Radial(r) => r.log_potential_profile(s),
            Measure::Discrete(d) => d
                .atoms
                .iter()
                .filter(|a| a.z.norm() < s && a.mass != 0.0)
                .map(|a| a.mass * (s / a.z.norm()).ln())
                .sum(),
        }
    }

    /// True when the measure has finitely many atoms or circles.
    pub fn is_finite_sum(&self) -> bool {
        matches!(
            self,
            Measure::Discrete(_) | Measure::Radial(RadialMeasure::Circles { .. })
        )
    }
}

/// `A_{M,ε}(z)`: mean of `M` over the circle of radius `ε(1-|z|)` about `z`.
pub fn circle_mean<M>(m: &M, z: Point, eps: f64) -> Result<f64>
where
    M: Fn(Point) -> f64 + ?Sized,
{
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition(format!("ε must lie in (0,1), got {eps}")));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Precondition(format!("|z| must be < 1, got {}", z.norm())));
    }
    let rho = eps * (1.0 - z.norm());
    let f = |theta: f64| m(z + Point::from_polar(rho, theta));
    periodic_mean(&f, 1e-13, 1 << 20)
}

/// `b^{[α]}(z) = (1-|z|)^{-2} ∫_{Box_α(z)} (1-|ζ|)² dν(ζ)`.
pub fn box_mass(nu: &Measure, z: Point, alpha: f64, cfg: QuadConfig) -> Result<f64> {
    let bx = CarlesonBox::new(z, alpha)?;
    let scale = (1.0 - z.norm()).powi(2);
    let weight = |t: f64| (1.0 - t).powi(2);
    let inner = match nu {
        Measure::Discrete(d) => d
            .atoms
            .iter()
            .filter(|a| bx.contains(a.z))
            .map(|a| a.mass * weight(a.z.norm()))
            .sum(),
        Measure::Radial(r) => {
            let angular_fraction = bx.half_width().min(PI) / PI;
            angular_fraction * r.radial_integral(&weight, bx.inner_radius().max(0.0), 1.0, cfg)?
        }
    };
    Ok(inner / scale)
}

/// Area average `F^{(σ)}(z)` of `F` over `D(z, σ(z))`.
pub fn mollify<F, S>(f: &F, sigma: &S, z: Point, cfg: QuadConfig) -> Result<f64>
where
    F: Fn(Point) -> f64 + Sync,
    S: Fn(Point) -> f64 + ?Sized,
{
    let s = sigma(z);
    let dist = 1.0 - z.norm();
    if !(s > 0.0 && s < dist) {
        return Err(Error::Precondition(format!(
            "σ(z) = {s} must lie in (0, dist(z, ∂𝔻) = {dist})"
        )));
    }
    disk_average(f, z, s, cfg)
}

/// The representative radius function `σ(z) = ε(1-|z|)`.
pub fn sigma_eps(eps: f64) -> impl Fn(Point) -> f64 {
    move |z: Point| eps * (1.0 - z.norm())
}

/// `(1/π) Σ m_k (1-|λ_k|²)² / |1 - λ_k ζ̄|⁴`, the density of the Riesz measure of [`k_lambda`].
pub fn berezin_density(seq: &ZeroSequence, zeta: Point) -> f64 {
    seq.entries()
        .iter()
        .map(|e| {
            let num = (1.0 - e.z.norm_sqr()).powi(2);
            let den = (1.0 - e.z * zeta.conj()).norm_sqr().powi(2);
            e.m as f64 * num / den
        })
        .sum::<f64>()
        / PI
}

/// `K_Λ(z) = (|z|²/2) Σ m_k (1-|λ_k|²)² / |1 - λ_k z̄|²`.
pub fn k_lambda(seq: &ZeroSequence, z: Point) -> f64 {
    0.5 * z.norm_sqr()
        * seq
            .entries()
            .iter()
            .map(|e| e.m as f64 * (1.0 - e.z.norm_sqr()).powi(2) / (1.0 - e.z * z.conj()).norm_sqr())
            .sum::<f64>()
}
