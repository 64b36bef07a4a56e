//! Extension of Whitney fields from finite sets.
//!
//! [`McShaneExtension`] handles `k = 0` in any dimension:
//! `F(x) = clamp(min_s [f(s) + λ ω(‖x − s‖)], −M, M)` with `λ` the exact
//! trace seminorm and `M = max |f|`. Since `ω(t)/t` is nonincreasing, `ω` is
//! subadditive, so `F` has seminorm at most `λ` and sup at most `M`.
//!
//! [`HermiteExtension1D`] handles any `k` on the line. Between consecutive
//! points it is the two-point Hermite interpolant of degree `2k + 1`; outside
//! the hull it is the endpoint Taylor polynomial multiplied by the cutoff
//! profile `ρ1(x − p)`, which equals 1 within distance 1 of the endpoint and
//! vanishes beyond distance 2. Its value at `x` depends on at most two
//! source points, i.e. at most `2(k + 1)` jet coefficients.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::cutoff::Cutoff;
use crate::error::{Error, Result};
use crate::math::{binomial, dist, factorial, powi};
use crate::modulus::Modulus;
use crate::multi_index::MultiIndex;
use crate::whitney::{Jet, Smooth, WhitneyField};

/// Weights of a linear extension operator at one query point.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceWeights {
    /// Index of the source point in the field.
    pub point: usize,
    /// `weights[j]` multiplies the `j`-th jet coefficient of that point.
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DepthRecord {
    /// `F(x) = Σ_i Σ_j weights_ij · c_j(y_i)` over the listed sources.
    Linear {
        sources: Vec<SourceWeights>,
        /// `F(x)` for the constant field `f ≡ 1`.
        constant_sum: f64,
    },
    /// The operator is not linear in the data.
    NotLinear,
}

impl DepthRecord {
    /// Number of active source points.
    pub fn depth(&self) -> Option<usize> {
        match self {
            DepthRecord::Linear { sources, .. } => Some(sources.len()),
            DepthRecord::NotLinear => None,
        }
    }

    /// Whether the constant field is reproduced within `tol`.
    pub fn reproduces_constants(&self, tol: f64) -> Option<bool> {
        match self {
            DepthRecord::Linear { constant_sum, .. } => Some((constant_sum - 1.0).abs() <= tol),
            DepthRecord::NotLinear => None,
        }
    }
}

pub trait ExtensionOperator {
    fn dim(&self) -> usize;
    /// The extension's value at `x`.
    fn extend(&self, x: &[f64]) -> Result<f64>;
    fn depth_audit(&self, x: &[f64]) -> Result<DepthRecord>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum McShaneVariant {
    /// `min_s f(s) + λ ω(‖x − s‖)`
    #[default]
    Min,
    /// `max_s f(s) − λ ω(‖x − s‖)`
    Max,
    /// Mean of the two.
    Average,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McShaneExtension {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
    lambda: f64,
    bound: f64,
    modulus: Modulus,
    variant: McShaneVariant,
}

impl McShaneExtension {
    pub fn new(field: &WhitneyField, modulus: Modulus) -> Result<Self> {
        if field.order() != 0 {
            return Err(Error::Input(format!("McShane extension needs k = 0, got k = {}", field.order())));
        }
        if field.is_empty() {
            return Err(Error::Input("McShane extension needs at least one point".to_string()));
        }
        let points: Vec<Vec<f64>> = field.points().map(|p| p.to_vec()).collect();
        let values: Vec<f64> = field.jets().iter().map(|j| j.coeffs()[0]).collect();
        let mut lambda = 0.0f64;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let w = modulus.eval(dist(&points[i], &points[j]))?;
                lambda = lambda.max((values[i] - values[j]).abs() / w);
            }
        }
        let bound = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        Ok(McShaneExtension { points, values, lambda, bound, modulus, variant: McShaneVariant::Min })
    }

    pub fn with_variant(mut self, variant: McShaneVariant) -> Self {
        self.variant = variant;
        self
    }

    /// The seminorm `max |f(s) − f(t)| / ω(‖s − t‖)` of the data.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `M = max |f|`.
    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.points[0].len() {
            return Err(Error::Input("query point has wrong dimension".to_string()));
        }
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for (p, &v) in self.points.iter().zip(&self.values) {
            let d = dist(x, p);
            if d == 0.0 {
                return Ok(v);
            }
            let r = self.lambda * self.modulus.eval(d)?;
            lower = lower.min(v + r);
            upper = upper.max(v - r);
        }
        let raw = match self.variant {
            McShaneVariant::Min => lower,
            McShaneVariant::Max => upper,
            McShaneVariant::Average => 0.5 * (lower + upper),
        };
        Ok(raw.clamp(-self.bound, self.bound))
    }
}

impl ExtensionOperator for McShaneExtension {
    fn dim(&self) -> usize {
        self.points[0].len()
    }

    fn extend(&self, x: &[f64]) -> Result<f64> {
        self.eval(x)
    }

    fn depth_audit(&self, _x: &[f64]) -> Result<DepthRecord> {
        Ok(DepthRecord::NotLinear)
    }
}

impl Smooth for McShaneExtension {
    fn dim(&self) -> usize {
        self.points[0].len()
    }
    fn max_order(&self) -> usize {
        0
    }
    fn derivative(&self, _alpha: &MultiIndex, x: &[f64]) -> f64 {
        self.eval(x).unwrap_or(f64::NAN)
    }
}

/// `clamp(min_s [f(s) + λ ω(‖x − s‖)], −M, M)`.
pub fn mcshane_extend(field: &WhitneyField, modulus: &Modulus, x: &[f64]) -> Result<f64> {
    McShaneExtension::new(field, modulus.clone())?.eval(x)
}

/// Polynomial in `t` by ascending coefficients.
type Poly = Vec<f64>;

fn poly_mul(a: &[f64], b: &[f64]) -> Poly {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `m`-th derivative of `p` at `t`.
fn poly_derivative(p: &[f64], m: usize, t: f64) -> f64 {
    let mut acc = 0.0;
    for i in (m..p.len()).rev() {
        let falling: f64 = (i - m + 1..=i).map(|v| v as f64).product();
        acc = acc * t + p[i] * falling;
    }
    acc
}

/// `q(t) = p(1 − t)`.
fn reflect(p: &[f64]) -> Poly {
    let mut out = vec![0.0; p.len()];
    let one_minus_t = [1.0, -1.0];
    let mut power: Poly = vec![1.0];
    for &c in p {
        for (o, v) in out.iter_mut().zip(&power) {
            *o += c * v;
        }
        power = poly_mul(&power, &one_minus_t);
    }
    out
}

/// Two-point Hermite basis on `[0, 1]`: `left[j]` has unit `j`-th
/// derivative at 0 and vanishes to order `k + 1` at 1; `right[j]` is its
/// mirror image.
fn hermite_basis(k: usize) -> (Vec<Poly>, Vec<Poly>) {
    let mut left = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut series: Poly = (0..=k - j).map(|i| binomial((k + i) as u64, i as u64)).collect();
        // (1 − t)^{k+1}
        let mut vanish: Poly = vec![1.0];
        for _ in 0..=k {
            vanish = poly_mul(&vanish, &[1.0, -1.0]);
        }
        series = poly_mul(&series, &vanish);
        let mut shifted = vec![0.0; j];
        shifted.extend(series.iter().map(|c| c / factorial(j as u32)));
        left.push(shifted);
    }
    let right = left
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            reflect(p).into_iter().map(|c| sign * c).collect()
        })
        .collect();
    (left, right)
}

#[derive(Debug, Clone)]
pub struct HermiteExtension1D {
    k: usize,
    /// Sorted abscissae with their index in the source field.
    points: Vec<(f64, usize)>,
    /// Derivative values `f^{(j)}(p)` per sorted point.
    jets: Vec<Vec<f64>>,
    left: Vec<Poly>,
    right: Vec<Poly>,
    cutoff: Cutoff,
}

/// Where a query point falls.
enum Location {
    Node(usize),
    Gap(usize),
    Left,
    Right,
}

impl HermiteExtension1D {
    pub fn new(field: &WhitneyField) -> Result<Self> {
        if field.dim() != 1 {
            return Err(Error::Input(format!("Hermite extension is one-dimensional, field has n = {}", field.dim())));
        }
        if field.is_empty() {
            return Err(Error::Input("Hermite extension needs at least one point".to_string()));
        }
        let k = field.order();
        let mut points: Vec<(f64, usize)> = field.points().enumerate().map(|(i, p)| (p[0], i)).collect();
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        // In one variable the graded order is simply 0, 1, ..., k.
        let jets = points.iter().map(|&(_, i)| field.jets()[i].coeffs().to_vec()).collect();
        let (left, right) = hermite_basis(k);
        Ok(HermiteExtension1D { k, points, jets, left, right, cutoff: Cutoff::new() })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    fn locate(&self, x: f64) -> Location {
        let pos = self.points.partition_point(|p| p.0 < x);
        if pos < self.points.len() && self.points[pos].0 == x {
            Location::Node(pos)
        } else if pos == 0 {
            Location::Left
        } else if pos == self.points.len() {
            Location::Right
        } else {
            Location::Gap(pos - 1)
        }
    }

    /// Weights `w[(sorted point, j)]` such that `D^m F(x) = Σ w · c_j`.
    fn weights(&self, x: f64, m: usize) -> Vec<(usize, Vec<f64>)> {
        let k = self.k;
        match self.locate(x) {
            Location::Node(i) => {
                let mut w = vec![0.0; k + 1];
                w[m] = 1.0;
                vec![(i, w)]
            }
            Location::Gap(i) => {
                let a = self.points[i].0;
                let b = self.points[i + 1].0;
                let h = b - a;
                let t = (x - a) / h;
                let scale = powi(h, -(m as i32));
                let wl = (0..=k).map(|j| powi(h, j as i32) * scale * poly_derivative(&self.left[j], m, t)).collect();
                let wr = (0..=k).map(|j| powi(h, j as i32) * scale * poly_derivative(&self.right[j], m, t)).collect();
                vec![(i, wl), (i + 1, wr)]
            }
            Location::Left | Location::Right => {
                let i = if x < self.points[0].0 { 0 } else { self.points.len() - 1 };
                let p = self.points[i].0;
                let s = x - p;
                // D^m [ρ1(s) T(x)] = Σ_r binom(m, r) ρ1^{(r)}(s) T^{(m−r)}(x),
                // T^{(q)}(x) = Σ_{j>=q} c_j s^{j−q}/(j−q)!.
                let mut w = vec![0.0; k + 1];
                for r in 0..=m {
                    let rho = self.cutoff.rho1_derivative(r, s);
                    if rho == 0.0 {
                        continue;
                    }
                    let q = m - r;
                    let c = binomial(m as u64, r as u64) * rho;
                    for (j, wj) in w.iter_mut().enumerate().skip(q) {
                        *wj += c * powi(s, (j - q) as i32) / factorial((j - q) as u32);
                    }
                }
                vec![(i, w)]
            }
        }
    }

    /// `D^m F(x)`, `m <= k`.
    pub fn derivative_at(&self, x: f64, m: usize) -> Result<f64> {
        if m > self.k {
            return Err(Error::Order { requested: m, available: self.k });
        }
        Ok(self
            .weights(x, m)
            .iter()
            .map(|(i, w)| w.iter().zip(&self.jets[*i]).map(|(a, b)| a * b).sum::<f64>())
            .sum())
    }

    /// The jet `(F(x), F'(x), ..., F^{(k)}(x))` at `x`.
    pub fn extend_jet(&self, x: f64) -> Result<Jet> {
        let coeffs = (0..=self.k).map(|m| self.derivative_at(x, m)).collect::<Result<Vec<_>>>()?;
        Jet::new(vec![x], self.k, coeffs)
    }

    /// Linear weights of `D^m F(x)` in terms of the source jets.
    pub fn depth_audit_order(&self, x: f64, m: usize) -> Result<DepthRecord> {
        if m > self.k {
            return Err(Error::Order { requested: m, available: self.k });
        }
        let weights = self.weights(x, m);
        let constant_sum = weights.iter().map(|(_, w)| w[0]).sum();
        let sources = weights
            .into_iter()
            .filter(|(_, w)| w.iter().any(|&v| v != 0.0))
            .map(|(i, weights)| SourceWeights { point: self.points[i].1, weights })
            .collect();
        Ok(DepthRecord::Linear { sources, constant_sum })
    }
}

impl ExtensionOperator for HermiteExtension1D {
    fn dim(&self) -> usize {
        1
    }

    fn extend(&self, x: &[f64]) -> Result<f64> {
        if x.len() != 1 {
            return Err(Error::Input("query point has wrong dimension".to_string()));
        }
        self.derivative_at(x[0], 0)
    }

    fn depth_audit(&self, x: &[f64]) -> Result<DepthRecord> {
        if x.len() != 1 {
            return Err(Error::Input("query point has wrong dimension".to_string()));
        }
        self.depth_audit_order(x[0], 0)
    }
}

impl Smooth for HermiteExtension1D {
    fn dim(&self) -> usize {
        1
    }
    fn max_order(&self) -> usize {
        self.k
    }
    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64 {
        self.derivative_at(x[0], alpha.order()).unwrap_or(f64::NAN)
    }
}

/// The jet of the Hermite extension of `field` at `x`.
pub fn hermite_extend_1d(field: &WhitneyField, x: f64) -> Result<Jet> {
    HermiteExtension1D::new(field)?.extend_jet(x)
}

/// Depth record of any extension operator at `x`.
pub fn depth_audit<E: ExtensionOperator + ?Sized>(op: &E, x: &[f64]) -> Result<DepthRecord> {
    op.depth_audit(x)
}
