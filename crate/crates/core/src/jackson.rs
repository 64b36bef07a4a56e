//! Jackson kernel smoothing and the finite-rank operators `L_{N,ℓ}`.
//!
//! The pipeline for a function `f` on `R^n`:
//!
//! 1. cut off and periodize: `f_ℓ(v + x) = ρ_ℓ(x) f(x)` for `x` in the cell
//!    `[-P/2, P/2)^n`, `v ∈ P·Z^n`, with period `P ≈ 8ℓ√n`;
//! 2. smooth: `(E_N f_ℓ)(x) = ∫ f_ℓ(x − λt) Π J_N(t_i) dt` over `[-π, π]^n`
//!    with `λ = P/(2π) ≈ 4ℓ√n/π`;
//! 3. `L_{N,ℓ} f = E_N f_ℓ`, with derivatives `D^α L_{N,ℓ} f = E_N D^α f_ℓ`.
//!
//! The period is `8ℓ√n` rounded to a multiple of `2^-24`. With a dyadic
//! period, translating a dyadic point by lattice vectors and reducing it
//! back are exact floating-point operations, so periodicity holds bit for
//! bit.
//!
//! Because `J_N` has width about `1/N` in `t`, the kernel of `E_N` has width
//! about `λ/N` in `x`. For fixed `ℓ` this goes to zero and `L_{N,ℓ} f → f_ℓ`
//! at rate `λ/N`; along the diagonal `ℓ = N` the width stays near `8/π`, and
//! `L_{N,N} f` does not converge to `f` pointwise. [`ApproxReport`] carries
//! constants fitted against both `1/N` and `λ/N`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::cutoff::Cutoff;
use crate::error::{Error, Result};
use crate::math::{abs, cos, round, sin, sqrt};
use crate::modulus::Modulus;
use crate::multi_index::{MultiIndex, MultiIndexSet};
use crate::quadrature::{adaptive_partition, AdaptiveOptions, GaussLegendre};
use crate::whitney::{adjacent_pairs, ck_norm_estimate, NormContext, Smooth};

const PI: f64 = core::f64::consts::PI;
/// Resolution of the stored period.
const PERIOD_QUANTUM: f64 = 1.0 / 16_777_216.0;

/// `J_N(t) = γ_N (sin(Ñt/2) / sin(t/2))^4`, `Ñ = ⌊N/2⌋`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacksonKernel {
    n: usize,
    half: usize,
    gamma: f64,
}

impl JacksonKernel {
    /// Normalizes the kernel by adaptive quadrature.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input(format!("Jackson kernel needs N >= 2, got {n}")));
        }
        let mut kernel = JacksonKernel { n, half: n / 2, gamma: 1.0 };
        let rule = GaussLegendre::new(20);
        let opts = AdaptiveOptions { abs_tol: 0.0, rel_tol: 1e-14, max_intervals: 20_000 };
        let breaks = kernel.breakpoints(0.0, PI);
        let half_mass = adaptive_partition(&rule, |t| kernel.ratio4(t), &breaks, opts)?;
        kernel.gamma = 1.0 / (2.0 * half_mass);
        Ok(kernel)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `Ñ`
    pub fn half_order(&self) -> usize {
        self.half
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Trigonometric degree `2Ñ − 2`.
    pub fn degree(&self) -> usize {
        2 * self.half - 2
    }

    fn ratio4(&self, t: f64) -> f64 {
        let m = self.half as f64;
        let s = sin(0.5 * t);
        let r = if abs(t) < 1e-8 {
            m * (1.0 - (m * m - 1.0) * t * t / 24.0)
        } else {
            sin(0.5 * m * t) / s
        };
        let r2 = r * r;
        r2 * r2
    }

    /// `J_N(t)`, 2π-periodic.
    pub fn eval(&self, t: f64) -> f64 {
        let t = if abs(t) <= PI { t } else { t - 2.0 * PI * round(t / (2.0 * PI)) };
        self.gamma * self.ratio4(t)
    }

    /// Uniform partition of `[a, b]` fine enough to resolve the peak.
    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let pieces = (self.half / 2).max(2);
        (0..=pieces).map(|i| a + (b - a) * i as f64 / pieces as f64).collect()
    }

    /// `∫_{-π}^{π} g(t) J_N(t) dt` by adaptive Gauss–Legendre.
    pub fn integrate<G: FnMut(f64) -> f64>(&self, mut g: G, opts: AdaptiveOptions) -> Result<f64> {
        let rule = GaussLegendre::new(20);
        let mut breaks = self.breakpoints(-PI, 0.0);
        breaks.pop();
        breaks.extend(self.breakpoints(0.0, PI));
        adaptive_partition(&rule, |t| g(t) * self.eval(t), &breaks, opts)
    }

    /// `∫ J_N`, for checking the normalization.
    pub fn mass(&self) -> Result<f64> {
        self.integrate(|_| 1.0, AdaptiveOptions { abs_tol: 0.0, rel_tol: 1e-14, max_intervals: 20_000 })
    }
}

/// Normalized Jackson kernel of order `N`.
pub fn kernel_normalize(n: usize) -> Result<JacksonKernel> {
    JacksonKernel::new(n)
}

fn default_options() -> AdaptiveOptions {
    AdaptiveOptions { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 50_000 }
}

/// `(L_N f)(x) = ∫ f(x − t) J_N(t) dt` for a 2π-periodic `f`.
pub fn jackson_smooth_1d<F: Fn(f64) -> f64>(f: F, kernel: &JacksonKernel, x: f64) -> Result<f64> {
    kernel.integrate(|t| f(x - t), default_options())
}

/// `8ℓ√n` rounded to a multiple of `2^-24`.
pub fn period(ell: u32, n: usize) -> f64 {
    let p = 8.0 * ell as f64 * sqrt(n as f64);
    round(p / PERIOD_QUANTUM) * PERIOD_QUANTUM
}

/// `f_ℓ`: the cut-off function `ρ_ℓ f` repeated with period `P` in each
/// coordinate.
pub struct Periodized<'a, S> {
    f: S,
    ell: f64,
    period: f64,
    cutoff: &'a Cutoff,
}

impl<'a, S: Smooth> Periodized<'a, S> {
    pub fn new(f: S, ell: u32, cutoff: &'a Cutoff) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Input("periodization scale must be >= 1".to_string()));
        }
        let period = period(ell, f.dim());
        Ok(Periodized { f, ell: ell as f64, period, cutoff })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Representative of `x` in the cell `[-P/2, P/2]^n`.
    pub fn reduce(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|&xi| reduce_coordinate(xi, self.period)).collect()
    }

    pub fn source(&self) -> &S {
        &self.f
    }
}

fn reduce_coordinate(x: f64, p: f64) -> f64 {
    let v = round(x / p);
    if v == 0.0 {
        x
    } else {
        x - v * p
    }
}

impl<S: Smooth> Smooth for Periodized<'_, S> {
    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn max_order(&self) -> usize {
        self.f.max_order()
    }

    /// Leibniz rule `D^α(ρ_ℓ f) = Σ_{ν<=α} binom(α,ν) D^ν ρ_ℓ D^{α−ν} f`.
    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64 {
        let y = self.reduce(x);
        let mut total = 0.0;
        let mut any = false;
        for nu in alpha.lower_set() {
            let r = self.cutoff.rho(self.ell, &nu, &y);
            if r == 0.0 {
                continue;
            }
            let rest = alpha.checked_sub(&nu).expect("nu <= alpha");
            let term = alpha.binomial(&nu) * r * self.f.derivative(&rest, &y);
            total = if any { total + term } else { term };
            any = true;
        }
        total
    }
}

/// `f_ℓ(x)`.
pub fn periodize<S: Smooth>(f: S, ell: u32, x: &[f64]) -> Result<f64> {
    let cutoff = Cutoff::new();
    let p = Periodized::new(f, ell, &cutoff)?;
    Ok(p.value(x))
}

/// The operators `E_N` at scale `ℓ` in dimension `n`.
#[derive(Debug, Clone)]
pub struct JacksonPipeline {
    n: usize,
    ell: u32,
    kernel: JacksonKernel,
    cutoff: Cutoff,
    period: f64,
    lambda: f64,
    options: AdaptiveOptions,
    /// One-dimensional `(t, weight · J_N(t))` for tensor quadrature.
    tensor_rule: Vec<(f64, f64)>,
}

/// Dimension limit of the tensor quadrature.
pub const MAX_DIMENSION: usize = 3;

impl JacksonPipeline {
    pub fn new(n: usize, ell: u32, big_n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::Input(format!("Jackson pipeline supports 1 <= n <= {MAX_DIMENSION}, got {n}")));
        }
        if ell == 0 {
            return Err(Error::Input("scale ℓ must be >= 1".to_string()));
        }
        let kernel = JacksonKernel::new(big_n)?;
        let period = period(ell, n);
        let lambda = period / (2.0 * PI);
        let tensor_rule = if n > 1 { tensor_rule(&kernel) } else { Vec::new() };
        Ok(JacksonPipeline {
            n,
            ell,
            kernel,
            cutoff: Cutoff::new(),
            period,
            lambda,
            options: default_options(),
            tensor_rule,
        })
    }

    /// The diagonal `ℓ = N`.
    pub fn diagonal(n: usize, big_n: usize) -> Result<Self> {
        let ell = u32::try_from(big_n).map_err(|_| Error::Input("N too large".to_string()))?;
        Self::new(n, ell, big_n)
    }

    pub fn with_options(mut self, options: AdaptiveOptions) -> Self {
        self.options = options;
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn kernel(&self) -> &JacksonKernel {
        &self.kernel
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// `λ = P/(2π)`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn periodize<S: Smooth>(&self, f: S) -> Result<Periodized<'_, S>> {
        if f.dim() != self.n {
            return Err(Error::Input(format!("function has dimension {}, pipeline {}", f.dim(), self.n)));
        }
        Periodized::new(f, self.ell, &self.cutoff)
    }

    /// `∫ g(x − λt) Π J_N(t_i) dt` for a `P`-periodic `g`.
    pub fn smooth<G: Fn(&[f64]) -> f64>(&self, g: G, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::Input("evaluation point has wrong dimension".to_string()));
        }
        if self.n == 1 {
            let lam = self.lambda;
            let x0 = x[0];
            return self.kernel.integrate(|t| g(&[x0 - lam * t]), self.options);
        }
        let rule = &self.tensor_rule;
        let m = rule.len();
        let mut idx = vec![0usize; self.n];
        let mut y = vec![0.0; self.n];
        let mut total = 0.0;
        loop {
            let mut w = 1.0;
            for (i, &j) in idx.iter().enumerate() {
                let (t, wt) = rule[j];
                y[i] = x[i] - self.lambda * t;
                w *= wt;
            }
            let v = g(&y);
            if !v.is_finite() {
                return Err(Error::Evaluation(format!("integrand is {v} at {y:?}")));
            }
            total += w * v;
            let mut d = 0;
            loop {
                idx[d] += 1;
                if idx[d] < m {
                    break;
                }
                idx[d] = 0;
                d += 1;
                if d == self.n {
                    return Ok(total);
                }
            }
        }
    }

    /// `(E_N f_ℓ)(x)`.
    pub fn smooth_en<S: Smooth>(&self, f: S, x: &[f64]) -> Result<f64> {
        let zero = MultiIndex::zero(self.n);
        self.finite_rank(f, &zero, x)
    }

    /// `D^α (L_{N,ℓ} f)(x) = (E_N D^α f_ℓ)(x)`.
    pub fn finite_rank<S: Smooth>(&self, f: S, alpha: &MultiIndex, x: &[f64]) -> Result<f64> {
        if alpha.dim() != self.n {
            return Err(Error::Input("multi-index has wrong dimension".to_string()));
        }
        if alpha.order() > f.max_order() {
            return Err(Error::Order { requested: alpha.order(), available: f.max_order() });
        }
        let fl = self.periodize(f)?;
        self.smooth(|y| fl.derivative(alpha, y), x)
    }

    /// Sampled comparison of `f`, `f_ℓ` and `E_N f_ℓ` in the `C^{k,ω}`
    /// norm.
    pub fn error_report<S: Smooth>(&self, f: S, ctx: &NormContext, grid: &[Vec<f64>]) -> Result<ApproxReport> {
        error_report_impl(self, f, ctx, grid)
    }
}

fn tensor_rule(kernel: &JacksonKernel) -> Vec<(f64, f64)> {
    let gl = GaussLegendre::new(12);
    let panels = (2 * kernel.half_order()).max(8);
    let h = 2.0 * PI / panels as f64;
    let mut out = Vec::with_capacity(panels * gl.order());
    for p in 0..panels {
        let a = -PI + p as f64 * h;
        for (t, w) in gl.mapped(a, a + h) {
            out.push((t, w * kernel.eval(t)));
        }
    }
    out
}

/// `(E_N f_ℓ)(x)` for a one-off evaluation.
pub fn smooth_en<S: Smooth>(f: S, ell: u32, big_n: usize, x: &[f64]) -> Result<f64> {
    JacksonPipeline::new(f.dim(), ell, big_n)?.smooth_en(f, x)
}

/// `D^α (L_{N,N} f)(x)`.
pub fn finite_rank_lnn<S: Smooth>(f: S, big_n: usize, x: &[f64], alpha: &MultiIndex) -> Result<f64> {
    JacksonPipeline::diagonal(f.dim(), big_n)?.finite_rank(f, alpha, x)
}

/// Sampled norms of `f`, `f_ℓ`, `E_N f_ℓ` and `f_ℓ − E_N f_ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub ell: u32,
    pub big_n: usize,
    pub lambda: f64,
    pub grid_size: usize,
    /// Sampled `‖f‖_{C^{k,ω}}`.
    pub f_norm: f64,
    /// `‖f_ℓ‖ / ‖f‖`, the empirical `C_ℓ`.
    pub c_ell: f64,
    /// `‖E_N f_ℓ‖ / ‖f‖`.
    pub smoothed_ratio: f64,
    /// `‖f_ℓ − E_N f_ℓ‖_{C^k} / ‖f‖`, the empirical `c_N`.
    pub c_n: f64,
    /// `c_N / (n C_ℓ max(1/N, ω(1/N)))`.
    pub fit_unscaled: f64,
    /// `c_N / (n C_ℓ max(λ/N, ω(λ/N)))`.
    pub fit_scaled: f64,
    /// `max_grid |D^α f_ℓ − D^α E_N f_ℓ|` per `α`.
    pub sup_errors: Vec<(MultiIndex, f64)>,
}

/// Sampled norm from tabulated derivatives: `values[p][i]` is `D^α g` at
/// grid point `p` for the `i`-th index.
fn tabulated_norm(
    values: &[Vec<f64>],
    grid: &[Vec<f64>],
    set: &MultiIndexSet,
    modulus: &Modulus,
    k: usize,
) -> Result<(f64, f64)> {
    let sup = values.iter().flatten().fold(0.0f64, |a, &v| a.max(abs(v)));
    let mut semi = 0.0f64;
    for p in 1..grid.len() {
        let d = crate::math::dist(&grid[p - 1], &grid[p]);
        if d == 0.0 {
            continue;
        }
        let w = modulus.eval(d)?;
        for i in set.order_range(k) {
            semi = semi.max(abs(values[p][i] - values[p - 1][i]) / w);
        }
    }
    Ok((sup, semi))
}

fn error_report_impl<S: Smooth>(
    pipe: &JacksonPipeline,
    f: S,
    ctx: &NormContext,
    grid: &[Vec<f64>],
) -> Result<ApproxReport> {
    if grid.len() < 2 {
        return Err(Error::Input("error report needs at least two grid points".to_string()));
    }
    if ctx.n != pipe.n || f.dim() != pipe.n {
        return Err(Error::Input("dimension mismatch between function, context and pipeline".to_string()));
    }
    if ctx.k > f.max_order() {
        return Err(Error::Order { requested: ctx.k, available: f.max_order() });
    }
    let half = 0.5 * pipe.period;
    if grid.iter().any(|x| x.len() != pipe.n || x.iter().any(|&v| abs(v) > half)) {
        return Err(Error::Input(format!("grid must lie in the fundamental cell [-{half}, {half}]^n")));
    }
    let f_est = ck_norm_estimate(&f, ctx, grid, &adjacent_pairs(grid))?;
    let f_norm = f_est.norm();
    let set = MultiIndexSet::new(pipe.n, ctx.k);
    let fl = pipe.periodize(&f)?;
    let mut per = Vec::with_capacity(grid.len());
    let mut smoothed = Vec::with_capacity(grid.len());
    for x in grid {
        let mut pv = Vec::with_capacity(set.len());
        let mut sv = Vec::with_capacity(set.len());
        for alpha in set.iter() {
            pv.push(fl.derivative(alpha, x));
            sv.push(pipe.smooth(|y| fl.derivative(alpha, y), x)?);
        }
        per.push(pv);
        smoothed.push(sv);
    }
    let diff: Vec<Vec<f64>> = per
        .iter()
        .zip(&smoothed)
        .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v).collect())
        .collect();
    let (p_sup, p_semi) = tabulated_norm(&per, grid, &set, &ctx.modulus, ctx.k)?;
    let (s_sup, s_semi) = tabulated_norm(&smoothed, grid, &set, &ctx.modulus, ctx.k)?;
    let err_sup = diff.iter().flatten().fold(0.0f64, |a, &v| a.max(abs(v)));
    let sup_errors = set
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), diff.iter().fold(0.0f64, |m, row| m.max(abs(row[i])))))
        .collect();
    let ratio = |v: f64| if f_norm > 0.0 { v / f_norm } else { 0.0 };
    let c_ell = ratio(p_sup.max(p_semi));
    let c_n = ratio(err_sup);
    let nn = pipe.kernel.order() as f64;
    let n = pipe.n as f64;
    let rate = |h: f64| -> Result<f64> { Ok((h).max(ctx.modulus.eval(h)?)) };
    let fit = |h: f64| -> Result<f64> {
        let denom = n * c_ell * rate(h)?;
        Ok(if denom > 0.0 { c_n / denom } else { 0.0 })
    };
    Ok(ApproxReport {
        ell: pipe.ell,
        big_n: pipe.kernel.order(),
        lambda: pipe.lambda,
        grid_size: grid.len(),
        f_norm,
        c_ell,
        smoothed_ratio: ratio(s_sup.max(s_semi)),
        c_n,
        fit_unscaled: fit(1.0 / nn)?,
        fit_scaled: fit(pipe.lambda / nn)?,
        sup_errors,
    })
}

/// `1 + c_{k,n} · 4√n · (k+1) · lim 1/ω`, with the limit proxied at `probe`.
pub fn rescale_factor(c_kn: f64, ctx: &NormContext, probe: f64) -> Result<f64> {
    let lim = ctx.modulus.limit_at_infinity_reciprocal(probe)?;
    Ok(1.0 + c_kn * 4.0 * sqrt(ctx.n as f64) * (ctx.k as f64 + 1.0) * lim)
}

/// Magnitudes of the discrete Fourier coefficients `|c_j|`, `j = 0..=M/2`,
/// of samples `h(2πm/M)`, `m = 0..M`.
pub fn fourier_magnitudes(samples: &[f64]) -> Vec<f64> {
    let m = samples.len();
    (0..=m / 2)
        .map(|j| {
            let (mut re, mut im) = (0.0, 0.0);
            for (p, &h) in samples.iter().enumerate() {
                // Reduce j·p mod m before scaling to keep the angle accurate.
                let ang = 2.0 * PI * ((j * p) % m) as f64 / m as f64;
                re += h * cos(ang);
                im -= h * sin(ang);
            }
            sqrt(re * re + im * im) / m as f64
        })
        .collect()
}

/// `max_{j > degree} |c_j| / max_j |c_j|` (0 for identically zero samples).
pub fn degree_tail_ratio(samples: &[f64], degree: usize) -> f64 {
    let mags = fourier_magnitudes(samples);
    let top = mags.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    mags.iter().skip(degree + 1).cloned().fold(0.0, f64::max) / top
}

/// Which condition of the weak* criterion failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakStarCondition {
    /// `sup_i ‖f_i‖ < ∞`
    BoundedNorms,
    /// `D^α f_i(x)` converges at every probe point.
    Pointwise,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceVerdict {
    pub converges: bool,
    pub failed: Vec<WeakStarCondition>,
    /// Sampled norm of each member of the sequence.
    pub norms: Vec<f64>,
    /// `max |D^α f_i(x) − D^α f_j(x)|` over the tail, probes and `α`.
    pub tail_oscillation: f64,
    /// First index of the tail used for the Cauchy test.
    pub tail_start: usize,
}

/// Settings for [`weakstar_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeakStarOptions {
    /// Points at which derivatives are compared.
    pub probes: Vec<Vec<f64>>,
    /// Sample for the norm estimates; adjacent points form the pairs.
    pub norm_grid: Vec<Vec<f64>>,
    pub norm_cap: f64,
    pub tolerance: f64,
}

/// Finite-prefix weak* test: (a) every sampled norm is at most the cap and
/// (b) over the last half of the sequence, derivatives at each probe vary by
/// at most the tolerance.
pub fn weakstar_check<S: Smooth>(
    sequence: &[S],
    ctx: &NormContext,
    opts: &WeakStarOptions,
) -> Result<ConvergenceVerdict> {
    if sequence.is_empty() {
        return Err(Error::Input("weak* check needs a nonempty sequence".to_string()));
    }
    let pairs = adjacent_pairs(&opts.norm_grid);
    let mut norms = Vec::with_capacity(sequence.len());
    for f in sequence {
        norms.push(ck_norm_estimate(f, ctx, &opts.norm_grid, &pairs)?.norm());
    }
    let bounded = norms.iter().all(|&v| v <= opts.norm_cap);
    let tail_start = sequence.len() / 2;
    let set = MultiIndexSet::new(ctx.n, ctx.k);
    let mut tail_oscillation = 0.0f64;
    for x in &opts.probes {
        for alpha in set.iter() {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for f in &sequence[tail_start..] {
                let v = f.derivative(alpha, x);
                if !v.is_finite() {
                    return Err(Error::Evaluation(format!("D^{alpha} f({x:?}) = {v}")));
                }
                lo = lo.min(v);
                hi = hi.max(v);
            }
            tail_oscillation = tail_oscillation.max(hi - lo);
        }
    }
    let pointwise = tail_oscillation <= opts.tolerance;
    let mut failed = Vec::new();
    if !bounded {
        failed.push(WeakStarCondition::BoundedNorms);
    }
    if !pointwise {
        failed.push(WeakStarCondition::Pointwise);
    }
    Ok(ConvergenceVerdict { converges: failed.is_empty(), failed, norms, tail_oscillation, tail_start })
}

/// `D^α` of `x ↦ g(x)` for `g = (E_N f_ℓ)`, as a [`Smooth`] object; failed
/// quadratures surface as NaN.
pub struct Smoothed<'a, S> {
    pipeline: &'a JacksonPipeline,
    f: S,
}

impl<'a, S: Smooth> Smoothed<'a, S> {
    pub fn new(pipeline: &'a JacksonPipeline, f: S) -> Self {
        Smoothed { pipeline, f }
    }
}

impl<S: Smooth> Smooth for Smoothed<'_, S> {
    fn dim(&self) -> usize {
        self.f.dim()
    }
    fn max_order(&self) -> usize {
        self.f.max_order()
    }
    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64 {
        self.pipeline.finite_rank(&self.f, alpha, x).unwrap_or(f64::NAN)
    }
}
