//! Gauss–Legendre rules and adaptive bisection.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math::{abs, cos};

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_m` from Chebyshev-like starting
    /// guesses; accurate to a few ulps for `m <= 100`.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let pi = core::f64::consts::PI;
        for i in 0..m.div_ceil(2) {
            let mut x = cos(pi * (i as f64 + 0.75) / (m as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if abs(dx) < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=m {
        let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tolerances for [`adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions { abs_tol: 1e-13, rel_tol: 1e-12, max_intervals: 20_000 }
    }
}

/// Globally adaptive integration of `f` over `[a, b]`.
///
/// Each interval is integrated by `rule` on the whole and on both halves;
/// the difference is the error estimate. The interval with the largest
/// estimate is bisected until the total estimate meets the tolerance.
pub fn adaptive<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    f: F,
    a: f64,
    b: f64,
    opts: AdaptiveOptions,
) -> Result<f64> {
    adaptive_partition(rule, f, &[a, b], opts)
}

/// As [`adaptive`], starting from the partition given by the sorted
/// `breakpoints`.
pub fn adaptive_partition<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    mut f: F,
    breakpoints: &[f64],
    opts: AdaptiveOptions,
) -> Result<f64> {
    let mut eval = |a: f64, b: f64| -> Piece {
        let m = 0.5 * (a + b);
        let whole = rule.integrate(&mut f, a, b);
        let halves = rule.integrate(&mut f, a, m) + rule.integrate(&mut f, m, b);
        Piece { a, b, value: halves, error: abs(whole - halves) }
    };
    let mut total = 0.0;
    let mut err = 0.0;
    let mut heap = BinaryHeap::new();
    for w in breakpoints.windows(2) {
        let piece = eval(w[0], w[1]);
        total += piece.value;
        err += piece.error;
        heap.push(piece);
    }
    if heap.is_empty() {
        return Ok(0.0);
    }
    loop {
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::Quadrature { estimate: total, error: err, intervals: heap.len() });
        }
        if err <= opts.abs_tol.max(opts.rel_tol * abs(total)) {
            // Re-sum to shed drift from the running updates.
            return Ok(heap.iter().map(|p| p.value).sum());
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature { estimate: total, error: err, intervals: heap.len() });
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            return Err(Error::Quadrature { estimate: total, error: err, intervals: heap.len() + 1 });
        }
        let left = eval(p.a, m);
        let right = eval(m, p.b);
        total += left.value + right.value - p.value;
        err += left.error + right.error - p.error;
        err = err.max(0.0);
        heap.push(left);
        heap.push(right);
    }
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}
