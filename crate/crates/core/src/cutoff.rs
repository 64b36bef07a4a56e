//! The smooth cutoff `ρ` and its dilates `ρ_ℓ(x) = ρ(x/ℓ)`.
//!
//! `ρ` is a tensor product `ρ(x) = Π ρ1(x_i)` of the one-dimensional
//! mollified indicator
//!
//! ```text
//! ρ1 = 1_[-3/2, 3/2] * φ,    φ(y) = exp(−1/(1 − 4y²)) / Z  on |y| < 1/2,
//! ```
//!
//! so `ρ1 = 1` on `[-1, 1]`, `ρ1 = 0` outside `(-2, 2)`, and `ρ = 1` on the
//! unit cube with support in the cube of half-side 2. Values use the bump's
//! distribution function `Φ`, tabulated on panels of width 1/64 and completed
//! by a 16-point Gauss–Legendre rule on the partial panel. Derivatives use
//! `ρ1^{(j)}(x) = φ^{(j−1)}(x + 3/2) − φ^{(j−1)}(x − 3/2)`, with derivatives of
//! `φ` from power-series arithmetic.

use alloc::vec::Vec;

use crate::math::{exp, factorial, floor, powi};
use crate::multi_index::{MultiIndex, MultiIndexSet};
use crate::quadrature::GaussLegendre;
use crate::taylor::series;

const PANELS: usize = 64;
/// Beyond this value of `1/(1 − 4y²)` the bump underflows to zero.
const UNDERFLOW: f64 = 740.0;

#[derive(Debug, Clone)]
pub struct Cutoff {
    gl: GaussLegendre,
    /// Unnormalized `∫_{-1/2}^{-1/2 + i/64} exp(−1/(1 − 4y²)) dy`.
    cumulative: Vec<f64>,
    z: f64,
}

impl Default for Cutoff {
    fn default() -> Self {
        Self::new()
    }
}

fn raw_bump(y: f64) -> f64 {
    let u = 1.0 - 4.0 * y * y;
    if u <= 0.0 || 1.0 / u > UNDERFLOW {
        0.0
    } else {
        exp(-1.0 / u)
    }
}

impl Cutoff {
    pub fn new() -> Self {
        let gl = GaussLegendre::new(16);
        let h = 1.0 / PANELS as f64;
        let mut cumulative = Vec::with_capacity(PANELS + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for i in 0..PANELS {
            let a = -0.5 + i as f64 * h;
            acc += gl.integrate(raw_bump, a, a + h);
            cumulative.push(acc);
        }
        let z = acc;
        Cutoff { gl, cumulative, z }
    }

    /// Normalization `Z = ∫ exp(−1/(1 − 4y²)) dy`.
    pub fn normalization(&self) -> f64 {
        self.z
    }

    /// The normalized bump `φ`.
    pub fn bump(&self, y: f64) -> f64 {
        raw_bump(y) / self.z
    }

    /// `φ^{(m)}(y)`.
    pub fn bump_derivative(&self, m: usize, y: f64) -> f64 {
        if m == 0 {
            return self.bump(y);
        }
        let u0 = 1.0 - 4.0 * y * y;
        if u0 <= 0.0 || 1.0 / u0 > UNDERFLOW {
            return 0.0;
        }
        let len = m + 1;
        // u(y + h) = u0 − 8y h − 4h²
        let mut u = vec![0.0; len];
        u[0] = u0;
        if len > 1 {
            u[1] = -8.0 * y;
        }
        if len > 2 {
            u[2] = -4.0;
        }
        let mut g = series::recip(&u);
        g.iter_mut().for_each(|c| *c = -*c);
        let e = series::exp(&g);
        e[m] * factorial(m as u32) / self.z
    }

    /// `Φ(y) = ∫_{-∞}^y φ`, exactly 0 for `y <= −1/2` and 1 for `y >= 1/2`.
    pub fn bump_cdf(&self, y: f64) -> f64 {
        if y <= -0.5 {
            return 0.0;
        }
        if y >= 0.5 {
            return 1.0;
        }
        let h = 1.0 / PANELS as f64;
        let s = (y + 0.5) / h;
        let i = (floor(s) as usize).min(PANELS - 1);
        let a = -0.5 + i as f64 * h;
        let partial = if y > a { self.gl.integrate(raw_bump, a, y) } else { 0.0 };
        ((self.cumulative[i] + partial) / self.z).clamp(0.0, 1.0)
    }

    /// One-dimensional profile `ρ1`.
    pub fn rho1(&self, x: f64) -> f64 {
        if x.abs() <= 1.0 {
            return 1.0;
        }
        if x.abs() >= 2.0 {
            return 0.0;
        }
        // Symmetric evaluation keeps ρ1 exactly even.
        let a = x.abs();
        1.0 - self.bump_cdf(a - 1.5)
    }

    /// `ρ1^{(j)}(x)`.
    pub fn rho1_derivative(&self, j: usize, x: f64) -> f64 {
        if j == 0 {
            return self.rho1(x);
        }
        if x.abs() <= 1.0 || x.abs() >= 2.0 {
            return 0.0;
        }
        self.bump_derivative(j - 1, x + 1.5) - self.bump_derivative(j - 1, x - 1.5)
    }

    /// `D^α ρ_ℓ(x) = Π ℓ^{−α_i} ρ1^{(α_i)}(x_i/ℓ)`.
    pub fn rho(&self, ell: f64, alpha: &MultiIndex, x: &[f64]) -> f64 {
        let mut v = 1.0;
        for (&a, &xi) in alpha.entries().iter().zip(x) {
            let d = self.rho1_derivative(a as usize, xi / ell);
            if d == 0.0 {
                return 0.0;
            }
            v *= d * powi(ell, -(a as i32));
        }
        v
    }

    /// Sampled `max |ρ1^{(j)}|` on `[1, 2]` with `samples` equispaced points.
    pub fn sup_derivative_1d(&self, j: usize, samples: usize) -> f64 {
        if j == 0 {
            return 1.0;
        }
        let samples = samples.max(2);
        (0..samples)
            .map(|i| self.rho1_derivative(j, 1.0 + i as f64 / (samples - 1) as f64).abs())
            .fold(0.0, f64::max)
    }

    /// Empirical `c_{k,n} = max_{|α| <= k+1} sup |D^α ρ|`, the constant in
    /// `sup |D^α ρ_ℓ| <= c_{k,n} ℓ^{−|α|}`. For a tensor product the sup of
    /// `D^α ρ` is the product of the one-dimensional sups.
    pub fn derivative_constant(&self, k: usize, n: usize, samples: usize) -> f64 {
        let sups: Vec<f64> = (0..=k + 1).map(|j| self.sup_derivative_1d(j, samples)).collect();
        MultiIndexSet::new(n, k + 1)
            .iter()
            .map(|a| a.entries().iter().map(|&e| sups[e as usize]).product::<f64>())
            .fold(0.0, f64::max)
    }
}
