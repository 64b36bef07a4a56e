//! Weak `k`-Markov ratios.
//!
//! For a cube `Q = Q_r(x)` and a finite sample of `S ∩ Q`, the ratio is
//!
//! ```text
//! sup_{p ∈ P_k, p ≠ 0}  max_Q |p| / max_sample |p|,
//! ```
//!
//! with `max_Q` taken over a regular grid (plus the sample itself).
//! Polynomials are written in the basis `((z − x)/r)^α`, so the ratio does
//! not depend on the scale of the cube. For each objective point `g` the
//! problem `max p(g)` subject to `|p| <= 1` on the sample is solved through
//! its dual, `min Σ|y_s|` subject to `Σ y_s φ(s) = φ(g)`, whose size is the
//! dimension of `P_k` rather than the sample size. An infeasible dual means
//! the primal is unbounded and the ratio is reported as capped.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{ceil, dist, powi};
use crate::multi_index::MultiIndexSet;
use crate::optim::{ConstraintKind, LinearProgram, LpStatus, Sense};

pub const DEFAULT_CAP: f64 = 1e6;
pub const DEFAULT_GRID: usize = 33;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MarkovRatio {
    Finite(f64),
    /// Unbounded, or larger than the cap.
    Capped,
}

impl MarkovRatio {
    pub fn value(&self) -> Option<f64> {
        match self {
            MarkovRatio::Finite(v) => Some(*v),
            MarkovRatio::Capped => None,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, MarkovRatio::Capped)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovProbe {
    pub center: Vec<f64>,
    pub radius: f64,
    pub k: usize,
    /// Points of `S ∩ Q_r(x)`.
    pub sample: Vec<Vec<f64>>,
    /// Grid points per axis on the cube.
    pub grid_per_axis: usize,
    pub cap: f64,
}

impl MarkovProbe {
    pub fn new(center: Vec<f64>, radius: f64, k: usize, sample: Vec<Vec<f64>>) -> Self {
        MarkovProbe { center, radius, k, sample, grid_per_axis: DEFAULT_GRID, cap: DEFAULT_CAP }
    }

    pub fn with_grid(mut self, per_axis: usize) -> Self {
        self.grid_per_axis = per_axis;
        self
    }

    pub fn with_cap(mut self, cap: f64) -> Self {
        self.cap = cap;
        self
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// The regular grid on `x + [-r, r]^n`.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        cube_grid(&self.center, self.radius, self.grid_per_axis)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        if n == 0 {
            return Err(Error::Input("center must have at least one coordinate".to_string()));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Input(format!("radius must be positive, got {}", self.radius)));
        }
        if self.sample.is_empty() {
            return Err(Error::Input("set sample is empty".to_string()));
        }
        if self.grid_per_axis == 0 {
            return Err(Error::Input("grid needs at least one point per axis".to_string()));
        }
        if self.cap.is_nan() || self.cap < 1.0 {
            return Err(Error::Input("ratio cap must be >= 1".to_string()));
        }
        for s in &self.sample {
            if s.len() != n {
                return Err(Error::Input("sample point has wrong dimension".to_string()));
            }
            let inside = s.iter().zip(&self.center).all(|(a, c)| (a - c).abs() <= self.radius * (1.0 + 1e-12));
            if !inside {
                return Err(Error::Input(format!("sample point {s:?} lies outside the cube")));
            }
        }
        Ok(())
    }
}

/// `x + r·{-1, ..., 1}^n` with `m` points per axis (`m = 1` gives `x`).
pub fn cube_grid(center: &[f64], r: f64, m: usize) -> Vec<Vec<f64>> {
    let n = center.len();
    let axis: Vec<f64> = if m == 1 {
        vec![0.0]
    } else {
        (0..m).map(|i| -1.0 + 2.0 * i as f64 / (m - 1) as f64).collect()
    };
    let total = m.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut p = Vec::with_capacity(n);
        for c in center {
            p.push(c + r * axis[code % m]);
            code /= m;
        }
        out.push(p);
    }
    out
}

fn basis(set: &MultiIndexSet, center: &[f64], r: f64, z: &[f64]) -> Vec<f64> {
    let u: Vec<f64> = z.iter().zip(center).map(|(a, c)| (a - c) / r).collect();
    set.iter().map(|a| a.monomial(&u)).collect()
}

/// `max p(g)` subject to `|p| <= 1` on the sample; `None` when unbounded.
fn extremal_value(sample_basis: &[Vec<f64>], target: &[f64]) -> Result<Option<f64>> {
    let s = sample_basis.len();
    let q = target.len();
    let mut lp = LinearProgram::new(2 * s, Sense::Minimize);
    lp.set_objective(vec![1.0; 2 * s]);
    for row in 0..q {
        let mut coeffs = vec![0.0; 2 * s];
        for (j, b) in sample_basis.iter().enumerate() {
            coeffs[j] = b[row];
            coeffs[s + j] = -b[row];
        }
        lp.add_constraint(coeffs, ConstraintKind::Eq, target[row]);
    }
    let sol = lp.solve()?;
    Ok(match sol.status {
        LpStatus::Optimal => Some(sol.objective),
        LpStatus::Infeasible => None,
        LpStatus::Unbounded => {
            return Err(Error::Solver {
                message: "dual of the Markov extremal problem cannot be unbounded".to_string(),
                log: Vec::new(),
            })
        }
    })
}

/// The discretized Markov ratio of a probe.
pub fn markov_ratio(probe: &MarkovProbe) -> Result<MarkovRatio> {
    probe.validate()?;
    let set = MultiIndexSet::new(probe.dim(), probe.k);
    let sample_basis: Vec<Vec<f64>> = probe
        .sample
        .iter()
        .map(|s| basis(&set, &probe.center, probe.radius, s))
        .collect();
    let mut best = 0.0f64;
    for g in probe.grid().iter().chain(&probe.sample) {
        let target = basis(&set, &probe.center, probe.radius, g);
        match extremal_value(&sample_basis, &target)? {
            Some(v) => best = best.max(v),
            None => return Ok(MarkovRatio::Capped),
        }
        if best > probe.cap {
            return Ok(MarkovRatio::Capped);
        }
    }
    Ok(MarkovRatio::Finite(best))
}

/// Change of the ratio when the grid is refined to `2m − 1` points per
/// axis; `None` if either ratio is capped.
pub fn refinement_delta(probe: &MarkovProbe) -> Result<Option<f64>> {
    let coarse = markov_ratio(probe)?;
    let fine_probe = probe.clone().with_grid(2 * probe.grid_per_axis - 1);
    let fine = markov_ratio(&fine_probe)?;
    Ok(match (coarse, fine) {
        (MarkovRatio::Finite(a), MarkovRatio::Finite(b)) => Some((b - a).abs()),
        _ => None,
    })
}

/// Built-in sets for Markov experiments.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// The closed cube `[-h, h]^n`.
    Cube { half_side: f64 },
    /// The closed Euclidean ball of the given radius about the origin.
    Ball { radius: f64 },
    /// The segment between two points.
    Segment { from: Vec<f64>, to: Vec<f64> },
    /// A single point.
    Point(Vec<f64>),
}

impl Shape {
    /// Samples `S ∩ Q_r(x)` at roughly `m` points per axis of the cube.
    pub fn sample(&self, center: &[f64], r: f64, m: usize) -> Vec<Vec<f64>> {
        let in_cube = |p: &[f64]| p.iter().zip(center).all(|(a, c)| (a - c).abs() <= r * (1.0 + 1e-12));
        match self {
            Shape::Cube { half_side } => cube_grid(center, r, m)
                .into_iter()
                .filter(|p| p.iter().all(|v| v.abs() <= *half_side))
                .collect(),
            Shape::Ball { radius } => {
                let origin = vec![0.0; center.len()];
                cube_grid(center, r, m)
                    .into_iter()
                    .filter(|p| dist(p, &origin) <= *radius)
                    .collect()
            }
            Shape::Segment { from, to } => {
                let len = dist(from, to);
                // Spacing no coarser than the cube grid.
                let h = if m > 1 { 2.0 * r / (m - 1) as f64 } else { r };
                let steps = (ceil(len / h) as usize).clamp(1, 1 << 20);
                let mut pts: Vec<Vec<f64>> = (0..=steps)
                    .map(|i| {
                        let t = i as f64 / steps as f64;
                        from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect::<Vec<f64>>()
                    })
                    .filter(|p| in_cube(p))
                    .collect();
                // Make sure the center itself is present when it lies on the segment.
                if !pts.iter().any(|p| p.as_slice() == center) && on_segment(from, to, center) {
                    pts.push(center.to_vec());
                }
                pts
            }
            Shape::Point(p) => {
                if in_cube(p) {
                    vec![p.clone()]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

fn on_segment(a: &[f64], b: &[f64], x: &[f64]) -> bool {
    let ab = dist(a, b);
    (dist(a, x) + dist(x, b) - ab).abs() <= 1e-12 * (1.0 + ab)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    WeakMarkov,
    /// No radius gave a ratio below the threshold; not a disproof.
    NotDetected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    /// `(r, ratio)` for each radius with a nonempty sample.
    pub ratios: Vec<(f64, MarkovRatio)>,
    /// Radii skipped because the sampler returned nothing.
    pub skipped: Vec<f64>,
    pub min_ratio: Option<f64>,
}

/// `r = 1, 1/2, ..., 2^{-10}`.
pub fn default_radii() -> Vec<f64> {
    (0..=10).map(|i| powi(0.5, i)).collect()
}

/// Evaluates the ratio along a radii ladder; the point is classified weak
/// Markov when the smallest ratio is at most `threshold`.
pub fn classify_weak_markov<F: Fn(&[f64], f64) -> Vec<Vec<f64>>>(
    x: &[f64],
    sampler: F,
    k: usize,
    radii: &[f64],
    threshold: f64,
    grid_per_axis: usize,
) -> Result<Classification> {
    if radii.is_empty() {
        return Err(Error::Input("radii list is empty".to_string()));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) || radii.iter().any(|&r| r.is_nan() || r <= 0.0) {
        return Err(Error::Input("radii must be positive and strictly decreasing".to_string()));
    }
    let mut ratios = Vec::new();
    let mut skipped = Vec::new();
    for &r in radii {
        let sample = sampler(x, r);
        if sample.is_empty() {
            skipped.push(r);
            continue;
        }
        let probe = MarkovProbe::new(x.to_vec(), r, k, sample).with_grid(grid_per_axis);
        ratios.push((r, markov_ratio(&probe)?));
    }
    let min_ratio = ratios.iter().filter_map(|(_, m)| m.value()).fold(None, |acc: Option<f64>, v| {
        Some(acc.map_or(v, |a| a.min(v)))
    });
    let verdict = match min_ratio {
        Some(v) if v <= threshold => Verdict::WeakMarkov,
        _ => Verdict::NotDetected,
    };
    Ok(Classification { verdict, ratios, skipped, min_ratio })
}
