//! Atomic functionals and norms of the geometric predual.
//!
//! The predual is spanned by the evaluation atoms `δ_x^α` (`|α| <= k`) and
//! the difference atoms `(δ_x^α − δ_y^α)/ω(‖x−y‖)` (`|α| = k`). For `k = 0`
//! its norm on functionals supported on a finite set is an LP over the
//! Lipschitz-ω unit ball of the support, which is exact because every
//! feasible vector extends to a function of norm at most one (McShane).
//! For `k >= 1` only a bracket `[lo, hi]` is computed.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math::{binomial, dist};
use crate::modulus::Modulus;
use crate::multi_index::{MultiIndex, MultiIndexSet};
use crate::optim::{ConstraintKind, LinearProgram, LpStatus, Sense};
use crate::whitney::{whitney_lambda, NormContext, Smooth, WhitneyField};

#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    /// `δ_x^α`
    Delta { x: Vec<f64>, alpha: MultiIndex },
    /// `(δ_x^α − δ_y^α) / ω(‖x − y‖)`
    Difference { x: Vec<f64>, y: Vec<f64>, alpha: MultiIndex },
}

impl Atom {
    pub fn delta(x: Vec<f64>, alpha: MultiIndex) -> Self {
        Atom::Delta { x, alpha }
    }

    pub fn difference(x: Vec<f64>, y: Vec<f64>, alpha: MultiIndex) -> Self {
        Atom::Difference { x, y, alpha }
    }

    pub fn alpha(&self) -> &MultiIndex {
        match self {
            Atom::Delta { alpha, .. } | Atom::Difference { alpha, .. } => alpha,
        }
    }

    fn validate(&self, ctx: &NormContext) -> Result<()> {
        let alpha = self.alpha();
        let dims_ok = |p: &[f64]| p.len() == ctx.n && p.iter().all(|v| v.is_finite());
        match self {
            Atom::Delta { x, .. } => {
                if !dims_ok(x) {
                    return Err(Error::Input(format!("atom point {x:?} is not a finite point of R^{}", ctx.n)));
                }
                if alpha.dim() != ctx.n || alpha.order() > ctx.k {
                    return Err(Error::Input(format!("delta atom needs |α| <= {}, got {alpha}", ctx.k)));
                }
            }
            Atom::Difference { x, y, .. } => {
                if !dims_ok(x) || !dims_ok(y) {
                    return Err(Error::Input("difference atom points must be finite points of R^n".to_string()));
                }
                if alpha.dim() != ctx.n || alpha.order() != ctx.k {
                    return Err(Error::Input(format!("difference atom needs |α| = {}, got {alpha}", ctx.k)));
                }
                if x == y {
                    return Err(Error::Input(format!("difference atom has coincident points {x:?}")));
                }
            }
        }
        Ok(())
    }

    /// Orders the endpoints of a difference atom; returns the sign change.
    fn canonical(self) -> (Atom, f64) {
        match self {
            Atom::Difference { x, y, alpha } if cmp_points(&x, &y) == Ordering::Greater => {
                (Atom::Difference { x: y, y: x, alpha }, -1.0)
            }
            a => (a, 1.0),
        }
    }
}

fn cmp_points(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// A finite combination `Σ c_a · a` of atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicFunctional {
    ctx: NormContext,
    terms: Vec<(Atom, f64)>,
}

impl AtomicFunctional {
    pub fn new(ctx: NormContext) -> Self {
        AtomicFunctional { ctx, terms: Vec::new() }
    }

    /// Builds a functional, merging duplicate atoms and dropping zero
    /// coefficients.
    pub fn from_terms(ctx: NormContext, terms: Vec<(Atom, f64)>) -> Result<Self> {
        let mut g = AtomicFunctional::new(ctx);
        for (a, c) in terms {
            g.add(a, c)?;
        }
        Ok(g)
    }

    pub fn add(&mut self, atom: Atom, coef: f64) -> Result<()> {
        atom.validate(&self.ctx)?;
        if !coef.is_finite() {
            return Err(Error::Input("atom coefficient must be finite".to_string()));
        }
        let (atom, sign) = atom.canonical();
        let coef = sign * coef;
        if let Some(pos) = self.terms.iter().position(|(a, _)| *a == atom) {
            self.terms[pos].1 += coef;
            if self.terms[pos].1 == 0.0 {
                self.terms.remove(pos);
            }
        } else if coef != 0.0 {
            self.terms.push((atom, coef));
        }
        Ok(())
    }

    pub fn context(&self) -> &NormContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Atom, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &AtomicFunctional, b: f64) -> Result<Self> {
        let mut g = AtomicFunctional::new(self.ctx.clone());
        for (atom, c) in &self.terms {
            g.add(atom.clone(), a * c)?;
        }
        for (atom, c) in &other.terms {
            g.add(atom.clone(), b * c)?;
        }
        Ok(g)
    }

    /// Distinct points carrying atoms, in order of first appearance.
    pub fn support(&self) -> Vec<Vec<f64>> {
        let mut pts: Vec<Vec<f64>> = Vec::new();
        let mut push = |p: &Vec<f64>| {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        };
        for (a, _) in &self.terms {
            match a {
                Atom::Delta { x, .. } => push(x),
                Atom::Difference { x, y, .. } => {
                    push(x);
                    push(y);
                }
            }
        }
        pts
    }

    /// Coordinates of the functional on jets over `support`: entry
    /// `i·len + p` multiplies `D^{α_p} f(support[i])`.
    fn coordinates(&self, support: &[Vec<f64>], set: &MultiIndexSet) -> Result<Vec<f64>> {
        let len = set.len();
        let mut v = vec![0.0; support.len() * len];
        let index = |p: &[f64], alpha: &MultiIndex| -> usize {
            let i = support.iter().position(|s| s.as_slice() == p).expect("point in support");
            i * len + set.position(alpha).expect("alpha in set")
        };
        for (a, c) in &self.terms {
            match a {
                Atom::Delta { x, alpha } => v[index(x, alpha)] += c,
                Atom::Difference { x, y, alpha } => {
                    let w = self.ctx.modulus.eval(dist(x, y))?;
                    v[index(x, alpha)] += c / w;
                    v[index(y, alpha)] -= c / w;
                }
            }
        }
        Ok(v)
    }
}

/// `⟨f, g⟩` for a Whitney field carrying every atom point of `g`.
pub fn pair(field: &WhitneyField, g: &AtomicFunctional) -> Result<f64> {
    let lookup = |p: &[f64], alpha: &MultiIndex| -> Result<f64> {
        let jet = field
            .jets()
            .iter()
            .find(|j| j.base() == p)
            .ok_or_else(|| Error::Input(format!("field has no jet at atom point {p:?}")))?;
        jet.coeff(alpha)
            .ok_or(Error::Order { requested: alpha.order(), available: jet.order() })
    };
    pair_with(g, lookup)
}

/// `⟨f, g⟩` for a function with derivatives.
pub fn pair_smooth<S: Smooth + ?Sized>(f: &S, g: &AtomicFunctional) -> Result<f64> {
    pair_with(g, |p, alpha| {
        if alpha.order() > f.max_order() {
            return Err(Error::Order { requested: alpha.order(), available: f.max_order() });
        }
        let v = f.derivative(alpha, p);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!("D^{alpha} f({p:?}) = {v}")))
        }
    })
}

fn pair_with<F: Fn(&[f64], &MultiIndex) -> Result<f64>>(g: &AtomicFunctional, eval: F) -> Result<f64> {
    let mut total = 0.0;
    for (a, c) in &g.terms {
        total += c * match a {
            Atom::Delta { x, alpha } => eval(x, alpha)?,
            Atom::Difference { x, y, alpha } => {
                (eval(x, alpha)? - eval(y, alpha)?) / g.ctx.modulus.eval(dist(x, y))?
            }
        };
    }
    Ok(total)
}

/// Result of [`predual_norm_k0`].
#[derive(Debug, Clone, PartialEq)]
pub struct K0Norm {
    pub value: f64,
    pub support: Vec<Vec<f64>>,
    /// Maximizing values `u_i` on the support: `|u_i| <= 1`,
    /// `|u_i − u_j| <= ω(‖x_i − x_j‖)`.
    pub maximizer: Vec<f64>,
}

impl K0Norm {
    /// The maximizer as a `k = 0` Whitney field.
    pub fn maximizer_field(&self) -> Result<WhitneyField> {
        let n = self.support.first().map_or(1, |p| p.len());
        WhitneyField::new(n, 0, self.support.clone(), self.maximizer.iter().map(|&u| vec![u]).collect())
    }
}

/// Exact norm of a `k = 0` functional: `max Σ c_i u_i` over the
/// Lipschitz-ω unit ball of the support.
pub fn predual_norm_k0(g: &AtomicFunctional, modulus: &Modulus) -> Result<K0Norm> {
    if g.ctx.k != 0 {
        return Err(Error::Unsupported(format!("exact predual norm is only available for k = 0, got k = {}", g.ctx.k)));
    }
    let support = g.support();
    let m = support.len();
    if m == 0 {
        return Ok(K0Norm { value: 0.0, support, maximizer: Vec::new() });
    }
    let ctx = NormContext::new(0, g.ctx.n, modulus.clone())?;
    let h = AtomicFunctional { ctx, terms: g.terms.clone() };
    let set = MultiIndexSet::new(g.ctx.n, 0);
    let c = h.coordinates(&support, &set)?;
    let mut lp = LinearProgram::new(m, Sense::Maximize);
    lp.set_objective(c);
    for i in 0..m {
        lp.set_bounds(i, -1.0, 1.0);
    }
    for i in 0..m {
        for j in i + 1..m {
            let w = modulus.eval(dist(&support[i], &support[j]))?;
            if w >= 2.0 {
                continue;
            }
            let mut row = vec![0.0; m];
            row[i] = 1.0;
            row[j] = -1.0;
            lp.add_abs_constraint(row, w);
        }
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver {
            message: format!("k = 0 predual LP ended with status {:?}", sol.status),
            log: Vec::new(),
        });
    }
    Ok(K0Norm { value: sol.objective, support, maximizer: sol.primal })
}

/// Two-sided estimate of the predual norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    /// `max ⟨f, g⟩` over fields on the support with `λ(f) <= 1`.
    pub lo: f64,
    /// Minimal `Σ |t_a|` over decompositions `g = Σ t_a a` into atoms on
    /// the support.
    pub hi: f64,
    pub support: Vec<Vec<f64>>,
    /// Atoms with nonzero weight in the optimal decomposition.
    pub decomposition: Vec<(Atom, f64)>,
}

/// `D^α T_x(z) = Σ_{β >= α} c_β (z − x)^{β−α} / (β−α)!` as weights on `c`.
fn taylor_weights(set: &MultiIndexSet, alpha: &MultiIndex, x: &[f64], z: &[f64]) -> Vec<f64> {
    let h: Vec<f64> = z.iter().zip(x).map(|(a, b)| a - b).collect();
    set.iter()
        .map(|beta| match beta.checked_sub(alpha) {
            Some(r) => r.monomial(&h) / r.factorial(),
            None => 0.0,
        })
        .collect()
}

/// Rows `D^α(T_i − T_j)(z)` for every pair, `z ∈ {x_i, x_j}` and `α`, with
/// their scales `d^{k−|α|} ω(d)`; columns are `i·len + p`.
fn whitney_rows(points: &[Vec<f64>], ctx: &NormContext, set: &MultiIndexSet) -> Result<Vec<(Vec<f64>, f64)>> {
    let len = set.len();
    let m = points.len();
    let mut rows = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let d = dist(&points[i], &points[j]);
            if d == 0.0 {
                return Err(Error::Input(format!("coincident points {:?}", points[i])));
            }
            let w = ctx.modulus.eval(d)?;
            for z in [&points[i], &points[j]] {
                for alpha in set.iter() {
                    let mut row = vec![0.0; m * len];
                    let wi = taylor_weights(set, alpha, &points[i], z);
                    let wj = taylor_weights(set, alpha, &points[j], z);
                    for p in 0..len {
                        row[i * len + p] += wi[p];
                        row[j * len + p] -= wj[p];
                    }
                    let scale = crate::math::powi(d, (ctx.k - alpha.order()) as i32) * w;
                    rows.push((row, scale));
                }
            }
        }
    }
    Ok(rows)
}

/// `[lo, hi]` around the predual norm of `g`; `lo <= hi` by weak duality.
pub fn predual_norm_bracket(g: &AtomicFunctional) -> Result<Bracket> {
    let ctx = &g.ctx;
    let support = g.support();
    if support.is_empty() {
        return Ok(Bracket { lo: 0.0, hi: 0.0, support, decomposition: Vec::new() });
    }
    let set = MultiIndexSet::new(ctx.n, ctx.k);
    let len = set.len();
    let m = support.len();
    let coords = g.coordinates(&support, &set)?;
    let nv = m * len;

    let mut lp = LinearProgram::new(nv, Sense::Maximize);
    lp.set_objective(coords.clone());
    for v in 0..nv {
        lp.set_bounds(v, -1.0, 1.0);
    }
    for (row, scale) in whitney_rows(&support, ctx, &set)? {
        if row.iter().all(|&v| v == 0.0) {
            continue;
        }
        lp.add_abs_constraint(row, scale);
    }
    let lo_sol = lp.solve()?;
    if lo_sol.status != LpStatus::Optimal {
        return Err(Error::Solver { message: format!("lower bracket LP: {:?}", lo_sol.status), log: Vec::new() });
    }

    // Atoms on the support: every delta, and differences for |α| = k.
    let mut atoms: Vec<(Atom, Vec<f64>)> = Vec::new();
    for (i, p) in support.iter().enumerate() {
        for (q, alpha) in set.iter().enumerate() {
            let mut col = vec![0.0; nv];
            col[i * len + q] = 1.0;
            atoms.push((Atom::delta(p.clone(), alpha.clone()), col));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let w = ctx.modulus.eval(dist(&support[i], &support[j]))?;
            for q in set.order_range(ctx.k) {
                let mut col = vec![0.0; nv];
                col[i * len + q] = 1.0 / w;
                col[j * len + q] = -1.0 / w;
                atoms.push((Atom::difference(support[i].clone(), support[j].clone(), set.get(q).clone()), col));
            }
        }
    }
    let na = atoms.len();
    // t = t⁺ − t⁻, minimize Σ (t⁺ + t⁻).
    let mut hi_lp = LinearProgram::new(2 * na, Sense::Minimize);
    hi_lp.set_objective(vec![1.0; 2 * na]);
    for r in 0..nv {
        let mut row = vec![0.0; 2 * na];
        for (a, (_, col)) in atoms.iter().enumerate() {
            row[a] = col[r];
            row[na + a] = -col[r];
        }
        hi_lp.add_constraint(row, ConstraintKind::Eq, coords[r]);
    }
    let hi_sol = hi_lp.solve()?;
    if hi_sol.status != LpStatus::Optimal {
        return Err(Error::Solver { message: format!("upper bracket LP: {:?}", hi_sol.status), log: Vec::new() });
    }
    let decomposition = atoms
        .into_iter()
        .enumerate()
        .filter_map(|(a, (atom, _))| {
            let t = hi_sol.primal[a] - hi_sol.primal[na + a];
            (t.abs() > 1e-12).then_some((atom, t))
        })
        .collect();
    Ok(Bracket { lo: lo_sol.objective, hi: hi_sol.objective, support, decomposition })
}

/// What `finiteness_gap` treats as the data on `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FinitenessMode {
    /// The field's full jets are the data; the quantity is `λ`.
    #[default]
    Jets,
    /// Only the values are data; the quantity is the smallest `λ` over all
    /// choices of the higher-order jet coefficients (an LP).
    Values,
}

/// Default guard on the number of subsets.
pub const SUBSET_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct FinitenessReport {
    pub mode: FinitenessMode,
    pub d: usize,
    /// The quantity on all of `S`.
    pub full: f64,
    /// Max of the quantity over subsets with at most `d` points.
    pub subset_sup: f64,
    /// `full / subset_sup` (1 when both vanish).
    pub ratio: f64,
    /// Indices of the first subset attaining `subset_sup`.
    pub witness: Vec<usize>,
    pub subsets_examined: usize,
    /// Whether enumeration stopped early because a subset reached `full`.
    pub early_exit: bool,
}

/// Smallest `λ` over fields whose values are those of `field` (LP).
pub fn values_lambda(field: &WhitneyField, ctx: &NormContext) -> Result<f64> {
    let set = MultiIndexSet::new(ctx.n, ctx.k);
    let len = set.len();
    let points: Vec<Vec<f64>> = field.points().map(|p| p.to_vec()).collect();
    let m = points.len();
    let values: Vec<f64> = field.jets().iter().map(|j| j.coeffs()[0]).collect();
    let sup0 = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if ctx.k == 0 || m == 1 {
        let mut lam = sup0;
        if ctx.k == 0 {
            for i in 0..m {
                for j in i + 1..m {
                    let w = ctx.modulus.eval(dist(&points[i], &points[j]))?;
                    lam = lam.max((values[i] - values[j]).abs() / w);
                }
            }
        }
        return Ok(lam);
    }
    // Variables: s, then the free coefficients c_{i,p} for p >= 1.
    let free = len - 1;
    let nv = 1 + m * free;
    let col = |i: usize, p: usize| 1 + i * free + (p - 1);
    let mut lp = LinearProgram::new(nv, Sense::Minimize);
    let mut obj = vec![0.0; nv];
    obj[0] = 1.0;
    lp.set_objective(obj);
    for v in 1..nv {
        lp.free(v);
    }
    // |c_{i,p}| <= s
    for i in 0..m {
        for p in 1..len {
            let mut row = vec![0.0; nv];
            row[col(i, p)] = 1.0;
            row[0] = -1.0;
            lp.add_constraint(row.clone(), ConstraintKind::Le, 0.0);
            row[col(i, p)] = -1.0;
            lp.add_constraint(row, ConstraintKind::Le, 0.0);
        }
    }
    let mut lower = vec![0.0; nv];
    lower[0] = 1.0;
    lp.add_constraint(lower, ConstraintKind::Ge, sup0);
    for (row, scale) in whitney_rows(&points, ctx, &set)? {
        // row·c = fixed + Σ free; |fixed + free·c| <= s·scale
        let mut fixed = 0.0;
        let mut r = vec![0.0; nv];
        for i in 0..m {
            fixed += row[i * len] * values[i];
            for p in 1..len {
                r[col(i, p)] = row[i * len + p];
            }
        }
        let mut up = r.clone();
        up[0] = -scale;
        lp.add_constraint(up, ConstraintKind::Le, -fixed);
        let mut down: Vec<f64> = r.iter().map(|v| -v).collect();
        down[0] = -scale;
        lp.add_constraint(down, ConstraintKind::Le, fixed);
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver { message: format!("values-mode LP: {:?}", sol.status), log: Vec::new() });
    }
    Ok(sol.objective)
}

fn quantity(field: &WhitneyField, ctx: &NormContext, mode: FinitenessMode) -> Result<f64> {
    match mode {
        FinitenessMode::Jets => Ok(whitney_lambda(field, ctx)?.lambda),
        FinitenessMode::Values => values_lambda(field, ctx),
    }
}

/// Compares the quantity on `S` with its maximum over subsets of at most
/// `d` points.
///
/// The quantity can only grow when points are added, so the maximum is
/// attained by subsets of exactly `min(d, |S|)` points; those are
/// enumerated in lexicographic order of sorted indices.
pub fn finiteness_gap(
    field: &WhitneyField,
    d: usize,
    ctx: &NormContext,
    mode: FinitenessMode,
    limit: u128,
) -> Result<FinitenessReport> {
    let m = field.len();
    if m == 0 {
        return Err(Error::Input("finiteness gap needs at least one point".to_string()));
    }
    if d == 0 {
        return Err(Error::Input("subset size d must be >= 1".to_string()));
    }
    let size = d.min(m);
    let required = (1..=size).map(|j| binomial(m as u64, j as u64) as u128).sum::<u128>();
    if required > limit {
        return Err(Error::Size { required, limit });
    }
    let full = quantity(field, ctx, mode)?;
    let mut subset_sup = f64::NEG_INFINITY;
    let mut witness = Vec::new();
    let mut examined = 0;
    let mut early_exit = false;
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let q = quantity(&field.subset(&idx), ctx, mode)?;
        examined += 1;
        if q > subset_sup {
            subset_sup = q;
            witness = idx.clone();
        }
        if subset_sup >= full {
            early_exit = examined < binomial(m as u64, size as u64) as usize;
            break;
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if idx[i] < m - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                i = usize::MAX;
                break;
            }
        }
        if i != usize::MAX {
            break;
        }
    }
    let ratio = if subset_sup > 0.0 {
        full / subset_sup
    } else if full == 0.0 {
        1.0
    } else {
        f64::INFINITY
    };
    Ok(FinitenessReport { mode, d, full, subset_sup, ratio, witness, subsets_examined: examined, early_exit })
}
