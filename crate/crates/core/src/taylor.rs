//! Truncated multivariate Taylor polynomials.
//!
//! A [`TaylorAlgebra`] fixes the number of variables `n` and the truncation
//! degree `m`; its elements are coefficient vectors in graded lexicographic
//! order holding *Taylor* coefficients `D^α g(x) / α!`. Multiplication drops
//! every term of total degree above `m`, which is exactly jet arithmetic.

use alloc::vec::Vec;

use crate::multi_index::{MultiIndex, MultiIndexSet};

#[derive(Debug, Clone)]
pub struct TaylorAlgebra {
    set: MultiIndexSet,
    /// `(i, j, l)` such that `α_i + α_j = α_l` with `|α_l| <= m`.
    products: Vec<(usize, usize, usize)>,
}

impl TaylorAlgebra {
    pub fn new(n: usize, degree: usize) -> Self {
        let set = MultiIndexSet::new(n, degree);
        let mut products = Vec::new();
        for (i, a) in set.iter().enumerate() {
            for (j, b) in set.iter().enumerate() {
                if a.order() + b.order() <= degree {
                    let l = set.position(&a.add(b)).expect("sum stays in the set");
                    products.push((i, j, l));
                }
            }
        }
        TaylorAlgebra { set, products }
    }

    pub fn indices(&self) -> &MultiIndexSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn zero(&self) -> Vec<f64> {
        vec![0.0; self.len()]
    }

    pub fn constant(&self, c: f64) -> Vec<f64> {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// The coordinate function `z_i` (displacement from the base point).
    pub fn variable(&self, i: usize) -> Vec<f64> {
        let mut v = self.zero();
        if self.set.max_order() >= 1 {
            let e = MultiIndex::unit(self.set.dim(), i);
            v[self.set.position(&e).unwrap()] = 1.0;
        }
        v
    }

    pub fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = self.zero();
        for &(i, j, l) in &self.products {
            out[l] += a[i] * b[j];
        }
        out
    }

    /// `a^p` by repeated multiplication.
    pub fn pow(&self, a: &[f64], p: u32) -> Vec<f64> {
        let mut out = self.constant(1.0);
        for _ in 0..p {
            out = self.mul(&out, a);
        }
        out
    }

    /// Converts derivative values `D^α g` (one per index of a compatible set
    /// of order >= `m`) into Taylor coefficients, truncating at `m`.
    pub fn from_derivatives(&self, derivative_set: &MultiIndexSet, values: &[f64]) -> Vec<f64> {
        self.set
            .iter()
            .map(|a| {
                derivative_set
                    .position(a)
                    .map(|p| values[p] / a.factorial())
                    .unwrap_or(0.0)
            })
            .collect()
    }

    /// `D^α g(x) = α! · coefficient_α`.
    pub fn derivative(&self, coeffs: &[f64], alpha: &MultiIndex) -> Option<f64> {
        self.set.position(alpha).map(|p| coeffs[p] * alpha.factorial())
    }

    /// Composes an outer jet with inner jets.
    ///
    /// `outer` holds Taylor coefficients of `f` at `y = H(x)` in
    /// `inner.len()` variables (same truncation degree, any set that contains
    /// all indices up to `m`); `inner[j]` are Taylor polynomials of `h_j` at
    /// `x` in this algebra. Returns the Taylor polynomial of `f ∘ H` at `x`:
    /// `Σ_λ outer_λ · Π_j (h_j − h_j(x))^{λ_j}`.
    pub fn compose(&self, outer_set: &MultiIndexSet, outer: &[f64], inner: &[Vec<f64>]) -> Vec<f64> {
        let m = self.set.max_order() as u32;
        // Powers of the centred inner polynomials, powers[j][p] = Δ_j^p.
        let powers: Vec<Vec<Vec<f64>>> = inner
            .iter()
            .map(|h| {
                let mut delta = h.clone();
                delta[0] = 0.0;
                let mut acc = Vec::with_capacity(m as usize + 1);
                acc.push(self.constant(1.0));
                for p in 1..=m as usize {
                    let next = self.mul(&acc[p - 1], &delta);
                    acc.push(next);
                }
                acc
            })
            .collect();
        let mut out = self.zero();
        for (pos, lambda) in outer_set.iter().enumerate() {
            if lambda.order() > m as usize || outer[pos] == 0.0 {
                continue;
            }
            let mut term = self.constant(outer[pos]);
            for (j, &lj) in lambda.entries().iter().enumerate() {
                if lj > 0 {
                    term = self.mul(&term, &powers[j][lj as usize]);
                }
            }
            for (o, t) in out.iter_mut().zip(&term) {
                *o += t;
            }
        }
        out
    }
}

/// Univariate truncated power series helpers used for smooth bump
/// functions. Coefficients are Taylor coefficients `g^{(j)}(x)/j!`.
pub(crate) mod series {
    use alloc::vec::Vec;

    /// `1/a`, requires `a[0] != 0`.
    pub fn recip(a: &[f64]) -> Vec<f64> {
        let m = a.len();
        let mut out = vec![0.0; m];
        out[0] = 1.0 / a[0];
        for i in 1..m {
            let s: f64 = (1..=i).map(|j| a[j] * out[i - j]).sum();
            out[i] = -s / a[0];
        }
        out
    }

    /// `exp(a)` via `g' = a' g`.
    pub fn exp(a: &[f64]) -> Vec<f64> {
        let m = a.len();
        let mut out = vec![0.0; m];
        out[0] = crate::math::exp(a[0]);
        for i in 1..m {
            let s: f64 = (1..=i).map(|j| j as f64 * a[j] * out[i - j]).sum();
            out[i] = s / i as f64;
        }
        out
    }
}
