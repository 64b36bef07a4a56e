//! Jets, Whitney fields and `C^{k,ω}` norms.
//!
//! A [`Jet`] at `x` stores would-be derivatives `c_α ≈ D^α f(x)` for
//! `|α| <= k`; its Taylor polynomial is `T_x(z) = Σ c_α/α! (z − x)^α`. A
//! [`WhitneyField`] is a finite set of distinct points with one jet each.
//!
//! [`whitney_lambda`] computes the smallest `λ` satisfying the pairwise
//! Whitney–Glaeser conditions
//!
//! ```text
//! max_{|α|<=k} |c_α(x)| <= λ
//! |D^α (T_x − T_y)(z)| <= λ · ‖x − y‖^{k−|α|} · ω(‖x − y‖),   z ∈ {x, y}
//! ```
//!
//! For `k = 0` this is exactly the trace norm of the data; for `k >= 1` it is
//! equivalent to the trace norm up to constants depending on `k, n` that are
//! not computed here.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, dist, powi};
use crate::modulus::Modulus;
use crate::multi_index::{MultiIndex, MultiIndexSet};
use crate::taylor::TaylorAlgebra;

/// Ambient parameters of a `C^{k,ω}(R^n)` space.
#[derive(Debug, Clone, PartialEq)]
pub struct NormContext {
    pub k: usize,
    pub n: usize,
    pub modulus: Modulus,
}

impl NormContext {
    pub fn new(k: usize, n: usize, modulus: Modulus) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("dimension n must be >= 1".to_string()));
        }
        Ok(NormContext { k, n, modulus })
    }
}

/// A function whose partial derivatives up to [`Smooth::max_order`] can be
/// evaluated pointwise.
pub trait Smooth {
    fn dim(&self) -> usize;
    fn max_order(&self) -> usize;
    /// `D^α f(x)`; `|α| <= max_order()`.
    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64;

    fn value(&self, x: &[f64]) -> f64 {
        self.derivative(&MultiIndex::zero(self.dim()), x)
    }
}

impl<T: Smooth + ?Sized> Smooth for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn max_order(&self) -> usize {
        (**self).max_order()
    }
    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64 {
        (**self).derivative(alpha, x)
    }
}

/// Adapts a closure `(α, x) ↦ D^α f(x)`.
pub struct FnSmooth<F> {
    dim: usize,
    order: usize,
    f: F,
}

impl<F: Fn(&MultiIndex, &[f64]) -> f64> FnSmooth<F> {
    pub fn new(dim: usize, order: usize, f: F) -> Self {
        FnSmooth { dim, order, f }
    }
}

impl<F: Fn(&MultiIndex, &[f64]) -> f64> Smooth for FnSmooth<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn max_order(&self) -> usize {
        self.order
    }
    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64 {
        (self.f)(alpha, x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: Vec<f64>,
    indices: Arc<MultiIndexSet>,
    coeffs: Vec<f64>,
}

impl Jet {
    /// `coeffs` are derivative values in graded lexicographic order.
    pub fn new(base: Vec<f64>, k: usize, coeffs: Vec<f64>) -> Result<Self> {
        let n = base_len_checked(&base)?;
        Jet::with_indices(base, Arc::new(MultiIndexSet::new(n, k)), coeffs)
    }

    pub fn with_indices(base: Vec<f64>, indices: Arc<MultiIndexSet>, coeffs: Vec<f64>) -> Result<Self> {
        if base.len() != indices.dim() || base.is_empty() {
            return Err(Error::Input(format!(
                "jet base point has dimension {}, expected {}",
                base.len(),
                indices.dim()
            )));
        }
        if coeffs.len() != indices.len() {
            return Err(Error::Input(format!(
                "jet needs {} coefficients for n = {}, k = {}, got {}",
                indices.len(),
                indices.dim(),
                indices.max_order(),
                coeffs.len()
            )));
        }
        if base.iter().chain(&coeffs).any(|v| !v.is_finite()) {
            return Err(Error::Input("jet contains non-finite values".to_string()));
        }
        Ok(Jet { base, indices, coeffs })
    }

    /// Jet of a smooth function at `x`.
    pub fn of<S: Smooth + ?Sized>(f: &S, x: &[f64], k: usize) -> Result<Self> {
        if k > f.max_order() {
            return Err(Error::Order { requested: k, available: f.max_order() });
        }
        let indices = Arc::new(MultiIndexSet::new(f.dim(), k));
        let coeffs = indices.iter().map(|a| f.derivative(a, x)).collect();
        Jet::with_indices(x.to_vec(), indices, coeffs)
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn order(&self) -> usize {
        self.indices.max_order()
    }

    pub fn indices(&self) -> &Arc<MultiIndexSet> {
        &self.indices
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `c_α`, or `None` when `|α| > k`.
    pub fn coeff(&self, alpha: &MultiIndex) -> Option<f64> {
        self.indices.position(alpha).map(|p| self.coeffs[p])
    }

    pub fn scaled(&self, s: f64) -> Jet {
        Jet {
            base: self.base.clone(),
            indices: self.indices.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `D^α T_x(z)` where `T_x` is the Taylor polynomial of this jet.
    pub fn taylor_eval(&self, alpha: &MultiIndex, z: &[f64]) -> Result<f64> {
        if alpha.dim() != self.dim() || z.len() != self.dim() {
            return Err(Error::Input("dimension mismatch in taylor_eval".to_string()));
        }
        if alpha.order() > self.order() {
            return Err(Error::Order { requested: alpha.order(), available: self.order() });
        }
        Ok(self.taylor_eval_unchecked(alpha, z))
    }

    pub(crate) fn taylor_eval_unchecked(&self, alpha: &MultiIndex, z: &[f64]) -> f64 {
        let h: Vec<f64> = z.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let mut acc = 0.0;
        for (beta, &c) in self.indices.iter().zip(&self.coeffs) {
            if c == 0.0 {
                continue;
            }
            if let Some(gamma) = beta.checked_sub(alpha) {
                acc += c / gamma.factorial() * gamma.monomial(&h);
            }
        }
        acc
    }
}

fn base_len_checked(base: &[f64]) -> Result<usize> {
    if base.is_empty() {
        Err(Error::Input("jet base point must have dimension >= 1".to_string()))
    } else {
        Ok(base.len())
    }
}

/// A finite set of distinct points carrying jets of a common order.
#[derive(Debug, Clone, PartialEq)]
pub struct WhitneyField {
    n: usize,
    k: usize,
    indices: Arc<MultiIndexSet>,
    jets: Vec<Jet>,
}

impl WhitneyField {
    /// `coeffs[i]` are the derivative values at `points[i]` in graded
    /// lexicographic order.
    pub fn new(n: usize, k: usize, points: Vec<Vec<f64>>, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("dimension n must be >= 1".to_string()));
        }
        if points.len() != coeffs.len() {
            return Err(Error::Input(format!(
                "{} points but {} jets",
                points.len(),
                coeffs.len()
            )));
        }
        let indices = Arc::new(MultiIndexSet::new(n, k));
        let jets = points
            .into_iter()
            .zip(coeffs)
            .map(|(p, c)| Jet::with_indices(p, indices.clone(), c))
            .collect::<Result<Vec<_>>>()?;
        WhitneyField::from_jets_with(n, k, indices, jets)
    }

    pub fn from_jets(jets: Vec<Jet>) -> Result<Self> {
        let first = jets
            .first()
            .ok_or_else(|| Error::Input("a field from jets needs at least one jet".to_string()))?;
        let (n, k) = (first.dim(), first.order());
        let indices = first.indices.clone();
        WhitneyField::from_jets_with(n, k, indices, jets)
    }

    fn from_jets_with(n: usize, k: usize, indices: Arc<MultiIndexSet>, jets: Vec<Jet>) -> Result<Self> {
        for j in &jets {
            if j.dim() != n || j.order() != k {
                return Err(Error::Input("all jets must share n and k".to_string()));
            }
        }
        for i in 0..jets.len() {
            for l in i + 1..jets.len() {
                if jets[i].base == jets[l].base {
                    return Err(Error::Input(format!(
                        "duplicate point {:?} (entries {} and {})",
                        jets[i].base, i, l
                    )));
                }
            }
        }
        Ok(WhitneyField { n, k, indices, jets })
    }

    /// Samples a smooth function on `points`.
    pub fn sample<S: Smooth + ?Sized>(f: &S, k: usize, points: &[Vec<f64>]) -> Result<Self> {
        let jets = points.iter().map(|p| Jet::of(f, p, k)).collect::<Result<Vec<_>>>()?;
        if jets.is_empty() {
            return Ok(WhitneyField {
                n: f.dim(),
                k,
                indices: Arc::new(MultiIndexSet::new(f.dim(), k)),
                jets,
            });
        }
        WhitneyField::from_jets(jets)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.jets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jets.is_empty()
    }

    pub fn jets(&self) -> &[Jet] {
        &self.jets
    }

    pub fn indices(&self) -> &Arc<MultiIndexSet> {
        &self.indices
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.jets.iter().map(|j| j.base())
    }

    /// The sub-field on the given point indices.
    pub fn subset(&self, which: &[usize]) -> WhitneyField {
        WhitneyField {
            n: self.n,
            k: self.k,
            indices: self.indices.clone(),
            jets: which.iter().map(|&i| self.jets[i].clone()).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> WhitneyField {
        WhitneyField {
            n: self.n,
            k: self.k,
            indices: self.indices.clone(),
            jets: self.jets.iter().map(|j| j.scaled(s)).collect(),
        }
    }

    /// `a·self + b·other`; both fields must live on the same points.
    pub fn combine(&self, a: f64, other: &WhitneyField, b: f64) -> Result<WhitneyField> {
        if self.len() != other.len() || self.k != other.k || self.n != other.n {
            return Err(Error::Input("fields differ in shape".to_string()));
        }
        let jets = self
            .jets
            .iter()
            .zip(&other.jets)
            .map(|(x, y)| {
                if x.base != y.base {
                    return Err(Error::Input("fields live on different points".to_string()));
                }
                Ok(Jet {
                    base: x.base.clone(),
                    indices: x.indices.clone(),
                    coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(p, q)| a * p + b * q).collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WhitneyField { n: self.n, k: self.k, indices: self.indices.clone(), jets })
    }

    /// Smallest positive pairwise distance (infinite for fewer than 2 points).
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.jets.len() {
            for j in i + 1..self.jets.len() {
                best = best.min(dist(&self.jets[i].base, &self.jets[j].base));
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupWitness {
    pub point: usize,
    pub alpha: MultiIndex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscWitness {
    pub x: usize,
    pub y: usize,
    /// Index of the evaluation point `z ∈ {x, y}`.
    pub z: usize,
    pub alpha: MultiIndex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaReport {
    pub lambda_sup: f64,
    pub lambda_osc: f64,
    pub lambda: f64,
    pub sup_witness: Option<SupWitness>,
    pub osc_witness: Option<OscWitness>,
}

fn check_ctx(field: &WhitneyField, ctx: &NormContext) -> Result<()> {
    if field.n != ctx.n || field.k != ctx.k {
        return Err(Error::Input(format!(
            "field has (n, k) = ({}, {}), context expects ({}, {})",
            field.n, field.k, ctx.n, ctx.k
        )));
    }
    Ok(())
}

/// The Whitney–Glaeser quantity `λ` of a field.
///
/// Pairs are scanned in lexicographic order `(x, y)` with `x < y`, then
/// `z ∈ (x, y)`, then `α` in graded lexicographic order; witnesses are the
/// first maximizer in that order.
pub fn whitney_lambda(field: &WhitneyField, ctx: &NormContext) -> Result<LambdaReport> {
    check_ctx(field, ctx)?;
    if field.is_empty() {
        return Err(Error::Input("whitney_lambda needs at least one point".to_string()));
    }
    let k = field.k;
    let mut lambda_sup = 0.0;
    let mut sup_witness = None;
    for (i, jet) in field.jets.iter().enumerate() {
        for (alpha, &c) in field.indices.iter().zip(&jet.coeffs) {
            if sup_witness.is_none() || abs(c) > lambda_sup {
                lambda_sup = abs(c);
                sup_witness = Some(SupWitness { point: i, alpha: alpha.clone() });
            }
        }
    }
    let mut lambda_osc = 0.0;
    let mut osc_witness = None;
    let jets = &field.jets;
    for i in 0..jets.len() {
        for j in i + 1..jets.len() {
            let d = dist(&jets[i].base, &jets[j].base);
            if d == 0.0 {
                return Err(Error::Input(format!("coincident points {} and {}", i, j)));
            }
            let w = ctx.modulus.eval(d)?;
            for &zi in &[i, j] {
                let z = &jets[zi].base;
                for alpha in field.indices.iter() {
                    let diff = jets[i].taylor_eval_unchecked(alpha, z)
                        - jets[j].taylor_eval_unchecked(alpha, z);
                    let scale = powi(d, (k - alpha.order()) as i32) * w;
                    let q = abs(diff) / scale;
                    if osc_witness.is_none() || q > lambda_osc {
                        lambda_osc = q;
                        osc_witness = Some(OscWitness { x: i, y: j, z: zi, alpha: alpha.clone() });
                    }
                }
            }
        }
    }
    Ok(LambdaReport {
        lambda_sup,
        lambda_osc,
        lambda: lambda_sup.max(lambda_osc),
        sup_witness,
        osc_witness,
    })
}

/// Sampled lower bound on `‖f‖_{C^{k,ω}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate {
    /// `max_{|α|<=k} max_{x ∈ sample} |D^α f(x)|`
    pub sup_part: f64,
    /// `max_{|α|=k} max_{(x,y) ∈ pairs} |D^α f(x) − D^α f(y)| / ω(‖x−y‖)`
    pub seminorm_part: f64,
    pub sup_witness: Option<(usize, MultiIndex)>,
    pub seminorm_witness: Option<(usize, MultiIndex)>,
    pub sample_size: usize,
    pub pair_count: usize,
    /// Always true: suprema over `R^n` are only sampled.
    pub lower_bound: bool,
}

impl NormEstimate {
    pub fn norm(&self) -> f64 {
        self.sup_part.max(self.seminorm_part)
    }
}

/// Sampled `C^{k,ω}` norm of `f` over `sample` (sup part) and `pairs`
/// (seminorm part).
pub fn ck_norm_estimate<S: Smooth + ?Sized>(
    f: &S,
    ctx: &NormContext,
    sample: &[Vec<f64>],
    pairs: &[(Vec<f64>, Vec<f64>)],
) -> Result<NormEstimate> {
    if f.dim() != ctx.n {
        return Err(Error::Input(format!("function has dimension {}, context {}", f.dim(), ctx.n)));
    }
    if ctx.k > f.max_order() {
        return Err(Error::Order { requested: ctx.k, available: f.max_order() });
    }
    if sample.is_empty() && pairs.is_empty() {
        return Err(Error::Input("norm estimate needs a nonempty sample".to_string()));
    }
    let indices = MultiIndexSet::new(ctx.n, ctx.k);
    let eval = |alpha: &MultiIndex, x: &[f64]| -> Result<f64> {
        let v = f.derivative(alpha, x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!("D^{alpha} f({x:?}) = {v}")))
        }
    };
    let mut sup_part = 0.0;
    let mut sup_witness = None;
    for (i, x) in sample.iter().enumerate() {
        if x.len() != ctx.n {
            return Err(Error::Input("sample point has wrong dimension".to_string()));
        }
        for alpha in indices.iter() {
            let v = abs(eval(alpha, x)?);
            if sup_witness.is_none() || v > sup_part {
                sup_part = v;
                sup_witness = Some((i, alpha.clone()));
            }
        }
    }
    let mut seminorm_part = 0.0;
    let mut seminorm_witness = None;
    let top = indices.order_range(ctx.k);
    for (p, (x, y)) in pairs.iter().enumerate() {
        let d = dist(x, y);
        if d == 0.0 {
            return Err(Error::Input(format!("pair {p} has coincident endpoints")));
        }
        let w = ctx.modulus.eval(d)?;
        for alpha in &indices.as_slice()[top.clone()] {
            let q = abs(eval(alpha, x)? - eval(alpha, y)?) / w;
            if seminorm_witness.is_none() || q > seminorm_part {
                seminorm_part = q;
                seminorm_witness = Some((p, alpha.clone()));
            }
        }
    }
    Ok(NormEstimate {
        sup_part,
        seminorm_part,
        sup_witness,
        seminorm_witness,
        sample_size: sample.len(),
        pair_count: pairs.len(),
        lower_bound: true,
    })
}

/// Consecutive pairs of a point list.
pub fn adjacent_pairs(points: &[Vec<f64>]) -> Vec<(Vec<f64>, Vec<f64>)> {
    points.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

/// All unordered pairs of a point list.
pub fn all_pairs(points: &[Vec<f64>]) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            out.push((points[i].clone(), points[j].clone()));
        }
    }
    out
}

/// Full jet of `f ∘ H` at `x` from the jet of `f` at `H(x)` and the jets of
/// the components `h_1..h_m` at `x`.
///
/// The result has order `min(order(f), min_j order(h_j))`. The composition
/// is carried out in truncated Taylor arithmetic: the centred component
/// polynomials are multiplied out and collected, which is the multivariate
/// Faà di Bruno expansion term by term.
pub fn compose_jets(f_jet: &Jet, h_jets: &[Jet]) -> Result<Jet> {
    if h_jets.len() != f_jet.dim() {
        return Err(Error::Input(format!(
            "f has {} variables but {} component jets were given",
            f_jet.dim(),
            h_jets.len()
        )));
    }
    let first = h_jets
        .first()
        .ok_or_else(|| Error::Input("at least one component jet is required".to_string()))?;
    let n = first.dim();
    for h in h_jets {
        if h.dim() != n || h.base != first.base {
            return Err(Error::Input("component jets must share the base point".to_string()));
        }
    }
    let m = h_jets.iter().map(|h| h.order()).min().unwrap().min(f_jet.order());
    let alg = TaylorAlgebra::new(n, m);
    let inner: Vec<Vec<f64>> = h_jets
        .iter()
        .map(|h| alg.from_derivatives(&h.indices, &h.coeffs))
        .collect();
    let outer = TaylorAlgebra::new(f_jet.dim(), m).from_derivatives(&f_jet.indices, &f_jet.coeffs);
    let outer_set = MultiIndexSet::new(f_jet.dim(), m);
    let taylor = alg.compose(&outer_set, &outer, &inner);
    let coeffs = alg
        .indices()
        .iter()
        .zip(&taylor)
        .map(|(a, c)| c * a.factorial())
        .collect();
    Jet::with_indices(first.base.clone(), Arc::new(alg.indices().clone()), coeffs)
}

/// `D^α (f ∘ H)(x)`.
pub fn faa_di_bruno_pullback(f_jet: &Jet, h_jets: &[Jet], alpha: &MultiIndex) -> Result<f64> {
    if let Some(h) = h_jets.first() {
        if alpha.dim() != h.dim() {
            return Err(Error::Input(format!(
                "multi-index has {} entries, component jets live in dimension {}",
                alpha.dim(),
                h.dim()
            )));
        }
    }
    let needed = alpha.order();
    if f_jet.order() < needed {
        return Err(Error::Order { requested: needed, available: f_jet.order() });
    }
    if let Some(h) = h_jets.iter().find(|h| h.order() < needed) {
        return Err(Error::Order { requested: needed, available: h.order() });
    }
    let composed = compose_jets(f_jet, h_jets)?;
    composed
        .coeff(alpha)
        .ok_or(Error::Order { requested: needed, available: composed.order() })
}
