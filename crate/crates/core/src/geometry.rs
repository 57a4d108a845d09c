//! Disks, finite unions of disks inside the unit disk, and Carleson boxes.
//!
//! A [`UnionDomain`] is the test-domain class used by every zero-set
//! criterion: a connected union of finitely many disks, compactly contained
//! in the ambient disk and containing the origin.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points of the plane. Components must be finite.
pub type Point = Complex64;

/// Margin enforced between a disk closure and the ambient circle.
pub const CONTAINMENT_MARGIN: f64 = 1e-9;

/// Number of sample points on |z| = a used by the coverage check.
const COVERAGE_SAMPLES: usize = 720;

pub fn is_finite_point(z: Point) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    #[serde(rename = "c")]
    pub center: Point,
    #[serde(rename = "r")]
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !is_finite_point(center) {
            return Err(Error::Domain(format!(
                "disk needs finite center and positive radius, got c={center}, r={radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn centered(radius: f64) -> Result<Self> {
        Self::new(Point::new(0.0, 0.0), radius)
    }

    /// Open-disk membership.
    pub fn contains(&self, z: Point) -> bool {
        (z - self.center).norm() < self.radius
    }

    pub fn contains_closed(&self, z: Point) -> bool {
        (z - self.center).norm() <= self.radius
    }

    /// `r - |z - c|`, negative outside.
    pub fn depth(&self, z: Point) -> f64 {
        self.radius - (z - self.center).norm()
    }

    /// Largest modulus of a point of the closed disk.
    pub fn outer_radius(&self) -> f64 {
        self.center.norm() + self.radius
    }

    /// Nearest point of the boundary circle to `z` (the direction is arbitrary
    /// when `z` is the center).
    pub fn project_to_boundary(&self, z: Point) -> Point {
        let d = z - self.center;
        let n = d.norm();
        if n == 0.0 {
            self.center + self.radius
        } else {
            self.center + d * (self.radius / n)
        }
    }

    pub fn overlaps(&self, other: &Disk) -> bool {
        (self.center - other.center).norm() < self.radius + other.radius
    }

    /// Angular window `(mid, half_width)` of the circle |ζ| = t that lies
    /// inside the open disk. `None` if the circle misses the disk, and a half
    /// width of `PI` when the whole circle is inside.
    pub fn angular_window(&self, t: f64) -> Option<(f64, f64)> {
        let c = self.center.norm();
        let r = self.radius;
        if t + c < r {
            return Some((0.0, PI));
        }
        if t >= c + r || t <= c - r {
            return None;
        }
        let cos_beta = ((t * t + c * c - r * r) / (2.0 * t * c)).clamp(-1.0, 1.0);
        Some((self.center.arg(), cos_beta.acos()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionDomain {
    pub disks: Vec<Disk>,
    #[serde(default = "unit_radius", skip_serializing_if = "is_unit")]
    pub ambient_radius: f64,
}

fn unit_radius() -> f64 {
    1.0
}

fn is_unit(r: &f64) -> bool {
    *r == 1.0
}

impl UnionDomain {
    pub fn new(disks: Vec<Disk>) -> Result<Self> {
        if disks.is_empty() {
            return Err(Error::Domain("a union domain needs at least one disk".into()));
        }
        Ok(Self {
            disks,
            ambient_radius: 1.0,
        })
    }

    pub fn single(disk: Disk) -> Self {
        Self {
            disks: vec![disk],
            ambient_radius: 1.0,
        }
    }

    /// The centered disk D(0, r).
    pub fn centered(r: f64) -> Result<Self> {
        Ok(Self::single(Disk::centered(r)?))
    }

    pub fn as_single_disk(&self) -> Option<&Disk> {
        match self.disks.as_slice() {
            [d] => Some(d),
            _ => None,
        }
    }

    pub fn contains(&self, z: Point) -> bool {
        self.disks.iter().any(|d| d.contains(z))
    }

    pub fn contains_closed(&self, z: Point) -> bool {
        self.disks.iter().any(|d| d.contains_closed(z))
    }

    /// Largest inscribed radius among the disks containing `z`; 0 outside.
    /// The disk of that radius about `z` lies in the union.
    pub fn inscribed_radius(&self, z: Point) -> f64 {
        self.deepest_disk(z).map_or(0.0, |(_, depth)| depth)
    }

    /// Index and depth of the disk realizing [`Self::inscribed_radius`].
    pub fn deepest_disk(&self, z: Point) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, d) in self.disks.iter().enumerate() {
            let depth = d.depth(z);
            if depth > 0.0 && best.is_none_or(|(_, b)| depth > b) {
                best = Some((i, depth));
            }
        }
        best
    }

    /// Max modulus over the closure; the extended Green's function vanishes beyond it.
    pub fn outer_radius(&self) -> f64 {
        self.disks
            .iter()
            .map(Disk::outer_radius)
            .fold(0.0, f64::max)
    }

    /// Connectivity of the overlap graph (disks adjacent iff they intersect).
    pub fn is_connected(&self) -> bool {
        let n = self.disks.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.disks[i].overlaps(&self.disks[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let root = find(&mut parent, 0);
        (1..n).all(|i| find(&mut parent, i) == root)
    }

    /// Checks the structural invariants, returning the first violated one.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.disks.is_empty() {
            return Err("no disks".into());
        }
        for (i, d) in self.disks.iter().enumerate() {
            if !(d.radius > 0.0) || !is_finite_point(d.center) {
                return Err(format!("disk {i} is degenerate"));
            }
            if d.outer_radius() > self.ambient_radius - CONTAINMENT_MARGIN {
                return Err(format!(
                    "disk {i} closure reaches the ambient circle (|c|+r = {})",
                    d.outer_radius()
                ));
            }
        }
        if !self.contains(Point::new(0.0, 0.0)) {
            return Err("origin not inside the union".into());
        }
        if !self.is_connected() {
            return Err("overlap graph is disconnected".into());
        }
        Ok(())
    }

    /// Membership in the test class with `D(a)` included: invariants plus a
    /// sampled coverage check of the closed disk `D(a)`.
    pub fn is_admissible(&self, a: f64) -> bool {
        self.check_admissible(a).is_ok()
    }

    pub fn check_admissible(&self, a: f64) -> std::result::Result<(), String> {
        self.check_invariants()?;
        if a > 0.0 && !self.covers_closed_disk(a) {
            return Err(format!("does not contain the closed disk D({a})"));
        }
        Ok(())
    }

    // Sampled check: 720 points of |z| = a plus a polar grid of interior
    // circles. Not a proof of coverage.
    fn covers_closed_disk(&self, a: f64) -> bool {
        let on_circle = |rho: f64, n: usize| {
            (0..n).all(|k| self.contains(Point::from_polar(rho, TAU * k as f64 / n as f64)))
        };
        if !on_circle(a, COVERAGE_SAMPLES) {
            return false;
        }
        (1..8).all(|j| on_circle(a * j as f64 / 8.0, COVERAGE_SAMPLES / 4))
    }
}

/// Carleson box of relative size `alpha` anchored at `anchor`:
/// `|z| - α(1-|z|) ≤ |ζ| < 1` and `|arg ζ - arg z| ≤ α(1-|z|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonBox {
    pub anchor: Point,
    pub alpha: f64,
}

impl CarlesonBox {
    pub fn new(anchor: Point, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::Domain(format!("box size must be positive, got {alpha}")));
        }
        if anchor == Point::new(0.0, 0.0) || anchor.norm() >= 1.0 || !is_finite_point(anchor) {
            return Err(Error::Domain(format!(
                "box anchor must lie in the punctured unit disk, got {anchor}"
            )));
        }
        Ok(Self { anchor, alpha })
    }

    /// `1 - |z|` times `alpha`: both the radial depth and the angular half-width.
    pub fn half_width(&self) -> f64 {
        self.alpha * (1.0 - self.anchor.norm())
    }

    pub fn inner_radius(&self) -> f64 {
        self.anchor.norm() - self.half_width()
    }

    pub fn contains(&self, zeta: Point) -> bool {
        let t = zeta.norm();
        if t >= 1.0 || t < self.inner_radius() {
            return false;
        }
        angle_distance(zeta.arg(), self.anchor.arg()) <= self.half_width()
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Request for [`random_domain_family`], matching the `family-gen` config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub seed: u64,
    pub count: usize,
    pub a: f64,
}

pub const MAX_FAMILY_DISKS: usize = 12;

/// Deterministic family of admissible domains containing `D(a)`.
///
/// The first three entries are the centered disks of radii `(1+a)/2`,
/// `(3+a)/4` and `(7+a)/8`; the rest are random connected unions of 1 to 12
/// disks. The length is `max(count, 3)`.
pub fn random_domain_family(seed: u64, count: usize, a: f64) -> Result<Vec<UnionDomain>> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::Domain(format!("inner radius a must lie in [0,1), got {a}")));
    }
    if count == 0 {
        return Err(Error::Domain("family count must be at least 1".into()));
    }
    let mut family: Vec<UnionDomain> = [(1.0 + a) / 2.0, (3.0 + a) / 4.0, (7.0 + a) / 8.0]
        .iter()
        .map(|&r| UnionDomain::centered(r))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while family.len() < count {
        let d = random_union(&mut rng, a);
        if d.is_admissible(a) {
            family.push(d);
        }
    }
    Ok(family)
}

fn random_union(rng: &mut ChaCha8Rng, a: f64) -> UnionDomain {
    let limit = 1.0 - 2.0 * CONTAINMENT_MARGIN;
    let n_disks = rng.gen_range(1..=MAX_FAMILY_DISKS);
    // Base disk strictly covers D(a).
    let base_r = a + (limit - a) * rng.gen_range(0.05..0.95);
    let mut disks = vec![Disk {
        center: Point::new(0.0, 0.0),
        radius: base_r,
    }];
    let mut attempts = 0;
    while disks.len() < n_disks && attempts < 200 {
        attempts += 1;
        let rho = rng.gen_range(0.0..limit);
        let theta = rng.gen_range(0.0..TAU);
        let room = limit - rho;
        if room <= 1e-3 {
            continue;
        }
        let radius = rng.gen_range(1e-3_f64.max(room * 0.05)..room);
        let cand = Disk {
            center: Point::from_polar(rho, theta),
            radius,
        };
        if disks.iter().any(|d| d.overlaps(&cand)) {
            disks.push(cand);
        }
    }
    UnionDomain {
        disks,
        ambient_radius: 1.0,
    }
}
