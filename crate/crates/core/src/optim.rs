//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! Every LP in this crate is small and dense, so the solver keeps a full
//! tableau. Bland's rule (smallest eligible index enters; ties in the ratio
//! test go to the smallest basic index) makes pivoting deterministic and
//! guarantees termination.
//!
//! Optimal solutions carry a certificate: the primal point and dual
//! multipliers are recomputed from the final basis by a fresh dense solve,
//! and the primal residual, dual residual, complementary slackness and
//! duality gap are measured against the original data.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::abs;

/// Dense solver guard on variables and constraints.
pub const MAX_DIMENSION: usize = 10_000;
/// Required relative duality gap of an `Optimal` result.
pub const GAP_TOLERANCE: f64 = 1e-7;

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-9;
const LOG_LEN: usize = 20;
const REFINE_LIMIT: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub kind: ConstraintKind,
    pub rhs: f64,
}

/// `optimize c·x  s.t.  a_i·x (<=|>=|=) b_i,  l_j <= x_j <= u_j`.
///
/// Variables default to `x_j >= 0`; use [`LinearProgram::set_bounds`] or
/// [`LinearProgram::free`] to change that.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<(f64, f64)>,
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LinearProgram {
            sense,
            objective: vec![0.0; num_vars],
            constraints: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_objective(&mut self, c: Vec<f64>) -> &mut Self {
        assert_eq!(c.len(), self.num_vars(), "objective length");
        self.objective = c;
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, kind: ConstraintKind, rhs: f64) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint length");
        self.constraints.push(Constraint { coeffs, kind, rhs });
        self
    }

    /// Adds `|a·x| <= b` as the pair `a·x <= b`, `−a·x <= b`.
    pub fn add_abs_constraint(&mut self, coeffs: Vec<f64>, bound: f64) -> &mut Self {
        let neg = coeffs.iter().map(|c| -c).collect();
        self.add_constraint(coeffs, ConstraintKind::Le, bound);
        self.add_constraint(neg, ConstraintKind::Le, bound)
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> &mut Self {
        self.bounds[var] = (lower, upper);
        self
    }

    pub fn free(&mut self, var: usize) -> &mut Self {
        self.set_bounds(var, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn solve(&self) -> Result<LpSolution> {
        solve(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Residuals measured against the original LP data.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Certificate {
    /// Largest violation of a constraint or bound by the primal point.
    pub primal_residual: f64,
    /// Largest violation of dual feasibility (reduced costs and multiplier
    /// signs).
    pub dual_residual: f64,
    /// Largest `|y_i · slack_i|` and `|r_j · x_j|`.
    pub complementarity: f64,
    /// `|primal objective − dual objective|`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value in the LP's own sense (meaningful when optimal).
    pub objective: f64,
    pub primal: Vec<f64>,
    /// Sensitivity of the optimum to each constraint's right-hand side.
    pub duals: Vec<f64>,
    /// Objective of the dual LP built from the multipliers.
    pub dual_objective: f64,
    pub certificate: Certificate,
    pub iterations: usize,
}

impl LpSolution {
    fn status_only(status: LpStatus, n: usize, m: usize, iterations: usize) -> Self {
        LpSolution {
            status,
            objective: match status {
                LpStatus::Unbounded => f64::INFINITY,
                _ => f64::NAN,
            },
            primal: vec![f64::NAN; n],
            duals: vec![f64::NAN; m],
            dual_objective: f64::NAN,
            certificate: Certificate::default(),
            iterations,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum RowOrigin {
    User(usize),
    Bound(usize),
}

/// The LP rewritten as `min c·s  s.t.  A s (kind) b,  s >= 0,  b >= 0`.
struct Standard {
    /// `(user variable, sign)` for each standard column.
    columns: Vec<(usize, f64)>,
    /// `x_j = offset_j + Σ sign · s_col`.
    offset: Vec<f64>,
    cost: Vec<f64>,
    cost_const: f64,
    rows: Vec<Vec<f64>>,
    kinds: Vec<ConstraintKind>,
    rhs: Vec<f64>,
    /// +1 or −1 when a row was negated to make its rhs nonnegative.
    flip: Vec<f64>,
    origin: Vec<RowOrigin>,
    /// +1 for minimize, −1 for maximize.
    sense_sign: f64,
}

fn standardize(lp: &LinearProgram) -> core::result::Result<Standard, ()> {
    let n = lp.num_vars();
    let mut columns = Vec::new();
    let mut offset = vec![0.0; n];
    let mut bound_rows = Vec::new();
    for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
        if lo > hi {
            return Err(());
        }
        if lo.is_finite() {
            offset[j] = lo;
            columns.push((j, 1.0));
            if hi.is_finite() {
                bound_rows.push((columns.len() - 1, j, hi - lo));
            }
        } else if hi.is_finite() {
            offset[j] = hi;
            columns.push((j, -1.0));
        } else {
            columns.push((j, 1.0));
            columns.push((j, -1.0));
        }
    }
    let sense_sign = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let cost: Vec<f64> = columns.iter().map(|&(j, s)| sense_sign * lp.objective[j] * s).collect();
    let cost_const = sense_sign * lp.objective.iter().zip(&offset).map(|(c, o)| c * o).sum::<f64>();
    let ns = columns.len();
    let mut rows = Vec::new();
    let mut kinds = Vec::new();
    let mut rhs = Vec::new();
    let mut flip = Vec::new();
    let mut origin = Vec::new();
    let mut push = |mut row: Vec<f64>, mut kind: ConstraintKind, mut b: f64, o: RowOrigin| {
        let mut f = 1.0;
        if b < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
            b = -b;
            f = -1.0;
            kind = match kind {
                ConstraintKind::Le => ConstraintKind::Ge,
                ConstraintKind::Ge => ConstraintKind::Le,
                ConstraintKind::Eq => ConstraintKind::Eq,
            };
        }
        rows.push(row);
        kinds.push(kind);
        rhs.push(b);
        flip.push(f);
        origin.push(o);
    };
    for (i, c) in lp.constraints.iter().enumerate() {
        let row: Vec<f64> = columns.iter().map(|&(j, s)| c.coeffs[j] * s).collect();
        let shift: f64 = c.coeffs.iter().zip(&offset).map(|(a, o)| a * o).sum();
        push(row, c.kind, c.rhs - shift, RowOrigin::User(i));
    }
    for (col, j, width) in bound_rows {
        let mut row = vec![0.0; ns];
        row[col] = 1.0;
        push(row, ConstraintKind::Le, width, RowOrigin::Bound(j));
    }
    Ok(Standard { columns, offset, cost, cost_const, rows, kinds, rhs, flip, origin, sense_sign })
}

struct Tableau {
    m: usize,
    width: usize,
    /// `m + 1` rows of `width + 1` entries; the last row holds reduced costs
    /// and `−objective`, the last column holds the rhs.
    t: Vec<f64>,
    basis: Vec<usize>,
    artificial_start: usize,
    iterations: usize,
    log: VecDeque<String>,
}

impl Tableau {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.width + 1) + j]
    }

    #[inline]
    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width)
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let w = self.width + 1;
        let piv = self.t[p * w + q];
        for j in 0..w {
            self.t[p * w + j] /= piv;
        }
        self.t[p * w + q] = 1.0;
        for i in 0..=self.m {
            if i == p {
                continue;
            }
            let factor = self.t[i * w + q];
            if factor == 0.0 {
                continue;
            }
            for j in 0..w {
                let v = self.t[p * w + j];
                if v != 0.0 {
                    self.t[i * w + j] -= factor * v;
                }
            }
            self.t[i * w + q] = 0.0;
        }
        self.basis[p] = q;
        self.iterations += 1;
        if self.log.len() == LOG_LEN {
            self.log.pop_front();
        }
        self.log.push_back(format!(
            "iter {}: col {} enters at row {}, objective {:e}",
            self.iterations,
            q,
            p,
            -self.at(self.m, self.width)
        ));
    }

    /// Loads `cost` into the reduced-cost row.
    fn set_cost(&mut self, cost: &[f64]) {
        let w = self.width + 1;
        for j in 0..w {
            let mut r = if j < self.width { cost[j] } else { 0.0 };
            for i in 0..self.m {
                let cb = cost[self.basis[i]];
                if cb != 0.0 {
                    r -= cb * self.t[i * w + j];
                }
            }
            self.t[self.m * w + j] = r;
        }
    }

    /// Runs Bland-rule simplex iterations on columns `< allowed`.
    fn run(&mut self, allowed: usize, max_iter: usize) -> Result<bool> {
        loop {
            if self.iterations >= max_iter {
                return Err(Error::Solver {
                    message: format!("iteration limit {max_iter} reached"),
                    log: self.log.iter().cloned().collect(),
                });
            }
            let q = match (0..allowed).find(|&j| self.at(self.m, j) < -COST_EPS) {
                Some(q) => q,
                None => return Ok(true),
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.at(i, q);
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i).max(0.0) / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            let tie = abs(ratio - br) <= 1e-12 * (1.0 + br.max(ratio));
                            if ratio < br && !tie || tie && self.basis[i] < self.basis[bi] {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                Some((p, _)) => self.pivot(p, q),
                None => return Ok(false),
            }
        }
    }
}

/// Solves `lp`.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars();
    if n > MAX_DIMENSION || lp.constraints.len() > MAX_DIMENSION {
        return Err(Error::Input(format!(
            "LP with {} variables and {} constraints exceeds the dense limit {}",
            n,
            lp.constraints.len(),
            MAX_DIMENSION
        )));
    }
    for c in &lp.constraints {
        if c.coeffs.len() != n {
            return Err(Error::Input("constraint length differs from variable count".to_string()));
        }
        if !c.rhs.is_finite() || c.coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input("LP data must be finite".to_string()));
        }
    }
    if lp.objective.iter().any(|v| !v.is_finite()) {
        return Err(Error::Input("LP objective must be finite".to_string()));
    }
    let m_user = lp.constraints.len();
    let std = match standardize(lp) {
        Ok(s) => s,
        Err(()) => return Ok(LpSolution::status_only(LpStatus::Infeasible, n, m_user, 0)),
    };
    let ns = std.columns.len();
    let m = std.rows.len();
    if ns == 0 {
        // Nothing to choose: feasibility only.
        let feasible = std.rhs.iter().zip(&std.kinds).all(|(&b, k)| match k {
            ConstraintKind::Le => true,
            _ => b <= 1e-12,
        });
        if !feasible {
            return Ok(LpSolution::status_only(LpStatus::Infeasible, n, m_user, 0));
        }
    }

    // Column layout: standard | slack/surplus | artificial.
    let mut slack_col = vec![usize::MAX; m];
    let mut next = ns;
    for (col, kind) in slack_col.iter_mut().zip(&std.kinds) {
        if *kind != ConstraintKind::Eq {
            *col = next;
            next += 1;
        }
    }
    let artificial_start = next;
    let mut art_col = vec![usize::MAX; m];
    for (col, kind) in art_col.iter_mut().zip(&std.kinds) {
        if *kind != ConstraintKind::Le {
            *col = next;
            next += 1;
        }
    }
    let width = next;
    let mut t = vec![0.0; (m + 1) * (width + 1)];
    let mut basis = vec![0; m];
    let mut initial_col = vec![0; m];
    for i in 0..m {
        let row = &mut t[i * (width + 1)..(i + 1) * (width + 1)];
        row[..ns].copy_from_slice(&std.rows[i]);
        match std.kinds[i] {
            ConstraintKind::Le => {
                row[slack_col[i]] = 1.0;
                basis[i] = slack_col[i];
            }
            ConstraintKind::Ge => {
                row[slack_col[i]] = -1.0;
                row[art_col[i]] = 1.0;
                basis[i] = art_col[i];
            }
            ConstraintKind::Eq => {
                row[art_col[i]] = 1.0;
                basis[i] = art_col[i];
            }
        }
        initial_col[i] = basis[i];
        row[width] = std.rhs[i];
    }
    let mut tab = Tableau {
        m,
        width,
        t,
        basis,
        artificial_start,
        iterations: 0,
        log: VecDeque::new(),
    };
    let max_iter = 200 * (m + width) + 1000;

    if artificial_start < width {
        let mut phase1 = vec![0.0; width];
        phase1[artificial_start..].iter_mut().for_each(|c| *c = 1.0);
        tab.set_cost(&phase1);
        tab.run(width, max_iter)?;
        let infeasibility = -tab.rhs(m);
        let scale = 1.0 + std.rhs.iter().fold(0.0f64, |a, &b| a.max(abs(b)));
        if infeasibility > 1e-8 * scale {
            return Ok(LpSolution::status_only(LpStatus::Infeasible, n, m_user, tab.iterations));
        }
        // Drive remaining artificial variables out of the basis.
        for i in 0..m {
            if tab.basis[i] >= tab.artificial_start {
                if let Some(q) = (0..tab.artificial_start).find(|&j| abs(tab.at(i, j)) > PIVOT_EPS) {
                    tab.pivot(i, q);
                }
            }
        }
    }
    let mut cost = vec![0.0; width];
    cost[..ns].copy_from_slice(&std.cost);
    tab.set_cost(&cost);
    let bounded = tab.run(tab.artificial_start, max_iter)?;
    if !bounded {
        return Ok(LpSolution::status_only(LpStatus::Unbounded, n, m_user, tab.iterations));
    }

    // Basic solution and multipliers from the tableau.
    let mut s = vec![0.0; width];
    for i in 0..m {
        s[tab.basis[i]] = tab.rhs(i);
    }
    let mut y: Vec<f64> = (0..m).map(|i| -tab.at(m, initial_col[i]) + cost[initial_col[i]]).collect();

    if m > 0 && m <= REFINE_LIMIT {
        refine(&std, &tab, &cost, &slack_col, &art_col, &mut s, &mut y);
    }

    // Back to user variables.
    let mut x = std.offset.clone();
    for (c, &(j, sign)) in std.columns.iter().enumerate() {
        x[j] += sign * s[c].max(0.0);
    }
    let objective: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let mut duals = vec![0.0; m_user];
    for (i, origin) in std.origin.iter().enumerate() {
        if let RowOrigin::User(u) = *origin {
            duals[u] = std.sense_sign * std.flip[i] * y[i];
        }
    }
    let dual_min: f64 = y.iter().zip(&std.rhs).map(|(a, b)| a * b).sum::<f64>() + std.cost_const;
    let dual_objective = std.sense_sign * dual_min;
    let certificate = certify(lp, &std, &x, &s[..ns], &y, objective, dual_objective);
    let solution = LpSolution {
        status: LpStatus::Optimal,
        objective,
        primal: x,
        duals,
        dual_objective,
        certificate,
        iterations: tab.iterations,
    };
    if certificate.gap > GAP_TOLERANCE * (1.0 + abs(objective)) {
        return Err(Error::Solver {
            message: format!(
                "duality gap {:e} exceeds tolerance at objective {:e}",
                certificate.gap, objective
            ),
            log: tab.log.iter().cloned().collect(),
        });
    }
    Ok(solution)
}

/// Recomputes basic values and multipliers by a fresh factorization of the
/// final basis, removing drift accumulated over many pivots.
fn refine(
    std: &Standard,
    tab: &Tableau,
    cost: &[f64],
    slack_col: &[usize],
    art_col: &[usize],
    s: &mut [f64],
    y: &mut [f64],
) {
    let m = tab.m;
    let ns = std.columns.len();
    let column = |j: usize| -> Vec<f64> {
        if j < ns {
            (0..m).map(|i| std.rows[i][j]).collect()
        } else {
            let mut e = vec![0.0; m];
            for i in 0..m {
                if slack_col[i] == j {
                    e[i] = if std.kinds[i] == ConstraintKind::Le { 1.0 } else { -1.0 };
                }
                if art_col[i] == j {
                    e[i] = 1.0;
                }
            }
            e
        }
    };
    // B stored row-major: b[i][r] = column(basis[r])[i].
    let cols: Vec<Vec<f64>> = tab.basis.iter().map(|&j| column(j)).collect();
    let mut b = vec![0.0; m * m];
    for r in 0..m {
        for i in 0..m {
            b[i * m + r] = cols[r][i];
        }
    }
    let Some(xb) = dense_solve(&b, &std.rhs, m) else { return };
    let mut bt = vec![0.0; m * m];
    for i in 0..m {
        for r in 0..m {
            bt[r * m + i] = b[i * m + r];
        }
    }
    let cb: Vec<f64> = tab.basis.iter().map(|&j| cost[j]).collect();
    let Some(yy) = dense_solve(&bt, &cb, m) else { return };
    s.iter_mut().for_each(|v| *v = 0.0);
    for r in 0..m {
        s[tab.basis[r]] = xb[r];
    }
    y.copy_from_slice(&yy);
}

/// Gaussian elimination with partial pivoting; `None` if singular.
fn dense_solve(a: &[f64], b: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    for c in 0..m {
        let (p, best) = (c..m)
            .map(|r| (r, abs(a[r * m + c])))
            .fold((c, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
        if best < 1e-13 {
            return None;
        }
        if p != c {
            for j in 0..m {
                a.swap(c * m + j, p * m + j);
            }
            b.swap(c, p);
        }
        let piv = a[c * m + c];
        for r in c + 1..m {
            let f = a[r * m + c] / piv;
            if f != 0.0 {
                for j in c..m {
                    a[r * m + j] -= f * a[c * m + j];
                }
                b[r] -= f * b[c];
            }
        }
    }
    let mut x = vec![0.0; m];
    for c in (0..m).rev() {
        let s: f64 = (c + 1..m).map(|j| a[c * m + j] * x[j]).sum();
        x[c] = (b[c] - s) / a[c * m + c];
    }
    Some(x)
}

fn certify(
    lp: &LinearProgram,
    std: &Standard,
    x: &[f64],
    s: &[f64],
    y: &[f64],
    objective: f64,
    dual_objective: f64,
) -> Certificate {
    let mut primal_residual = 0.0f64;
    for c in &lp.constraints {
        let ax: f64 = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        let viol = match c.kind {
            ConstraintKind::Le => ax - c.rhs,
            ConstraintKind::Ge => c.rhs - ax,
            ConstraintKind::Eq => abs(ax - c.rhs),
        };
        primal_residual = primal_residual.max(viol);
    }
    for (v, &(lo, hi)) in x.iter().zip(&lp.bounds) {
        primal_residual = primal_residual.max(lo - v).max(v - hi);
    }
    let mut dual_residual = 0.0f64;
    let mut complementarity = 0.0f64;
    for (i, row) in std.rows.iter().enumerate() {
        let sign_viol = match std.kinds[i] {
            ConstraintKind::Le => y[i],
            ConstraintKind::Ge => -y[i],
            ConstraintKind::Eq => 0.0,
        };
        dual_residual = dual_residual.max(sign_viol);
        let slack: f64 = std.rhs[i] - row.iter().zip(s).map(|(a, v)| a * v).sum::<f64>();
        complementarity = complementarity.max(abs(y[i] * slack));
    }
    for (j, sj) in s.iter().enumerate().take(std.columns.len()) {
        let r = std.cost[j] - std.rows.iter().zip(y.iter()).map(|(row, yi)| row[j] * yi).sum::<f64>();
        dual_residual = dual_residual.max(-r);
        complementarity = complementarity.max(abs(r * sj));
    }
    Certificate {
        primal_residual: primal_residual.max(0.0),
        dual_residual,
        complementarity,
        gap: abs(objective - dual_objective),
    }
}
