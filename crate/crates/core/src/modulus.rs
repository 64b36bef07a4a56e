//! Moduli of continuity.
//!
//! A modulus `ω: (0, ∞) → [0, ∞)` must satisfy
//!
//! 1. `ω` is nondecreasing,
//! 2. `t / ω(t)` is nondecreasing,
//! 3. `ω(t) → 0` as `t → 0+`.
//!
//! Built-in kinds satisfy all three for valid parameters. Table moduli are
//! piecewise linear through the origin and constant after the last
//! breakpoint, which preserves the axioms whenever the breakpoints do.

use alloc::string::ToString;
use alloc::vec::Vec;
use alloc::format;

use crate::error::{Error, Result};
use crate::math::{abs, powf};

#[derive(Debug, Clone, PartialEq)]
pub enum Modulus {
    /// `ω(t) = t^a`, `a ∈ (0, 1]`.
    Power { exponent: f64 },
    /// `ω(t) = t`.
    Linear,
    /// `ω(t) = min(t^a, cap)`.
    Capped { exponent: f64, cap: f64 },
    /// Piecewise-linear interpolation of `(t_i, ω_i)`, with `ω(0+) = 0` and
    /// constant extrapolation beyond the last breakpoint.
    Table { breakpoints: Vec<(f64, f64)> },
}

/// The axiom that a grid check found violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Nondecreasing,
    RatioNondecreasing,
    VanishesAtZero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Witness pair `t_i < t_j` (for `VanishesAtZero`: probe point and the
    /// grid minimum).
    pub witness: (f64, f64),
    /// The offending values at the witness pair.
    pub values: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub grid: Vec<f64>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Relative decay required between `ω(t_min)` and `ω(f64::MIN_POSITIVE)`
/// for the `ω(0+) = 0` check.
pub const ZERO_LIMIT_DECAY: f64 = 1e-2;

impl Modulus {
    pub fn power(exponent: f64) -> Result<Self> {
        check_exponent(exponent)?;
        Ok(Modulus::Power { exponent })
    }

    pub fn capped(exponent: f64, cap: f64) -> Result<Self> {
        check_exponent(exponent)?;
        if !(cap > 0.0 && cap.is_finite()) {
            return Err(Error::Input(format!("cap must be positive, got {cap}")));
        }
        Ok(Modulus::Capped { exponent, cap })
    }

    /// Breakpoints must have strictly increasing positive abscissae and
    /// finite nonnegative values. Monotonicity axioms are *not* enforced here;
    /// use [`Modulus::validate`].
    pub fn table(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::Input("table modulus needs at least one breakpoint".to_string()));
        }
        for (i, &(t, w)) in breakpoints.iter().enumerate() {
            if !(t > 0.0 && t.is_finite()) || !(w >= 0.0 && w.is_finite()) {
                return Err(Error::Input(format!("invalid breakpoint ({t}, {w})")));
            }
            if i > 0 && t <= breakpoints[i - 1].0 {
                return Err(Error::Input("breakpoints must be strictly increasing in t".to_string()));
            }
        }
        Ok(Modulus::Table { breakpoints })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::Domain(format!("modulus evaluated at t = {t}")));
        }
        Ok(self.eval_unchecked(t))
    }

    /// `ω(t)` without the domain check; callers guarantee `t > 0`.
    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match self {
            Modulus::Linear => t,
            Modulus::Power { exponent } => powf(t, *exponent),
            Modulus::Capped { exponent, cap } => powf(t, *exponent).min(*cap),
            Modulus::Table { breakpoints } => {
                let (t0, w0) = breakpoints[0];
                if t <= t0 {
                    return w0 * (t / t0);
                }
                let last = breakpoints[breakpoints.len() - 1];
                if t >= last.0 {
                    return last.1;
                }
                let j = breakpoints.partition_point(|&(tb, _)| tb <= t);
                let (ta, wa) = breakpoints[j - 1];
                let (tb, wb) = breakpoints[j];
                wa + (wb - wa) * (t - ta) / (tb - ta)
            }
        }
    }

    /// Checks the three axioms on a sorted grid of positive reals.
    ///
    /// Monotonicity of `ω` and `t/ω(t)` is checked on every pair of grid
    /// points (so every violation is listed with a witness pair); the limit
    /// at zero is probed at `f64::MIN_POSITIVE` and must have decayed by a
    /// factor [`ZERO_LIMIT_DECAY`] relative to `ω` at the grid minimum.
    pub fn validate(&self, grid: &[f64]) -> Result<ValidationReport> {
        if grid.len() < 2 {
            return Err(Error::Input("validation grid needs at least 2 points".to_string()));
        }
        if grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::Input("validation grid must be positive and finite".to_string()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Input("validation grid must be strictly increasing".to_string()));
        }
        let values: Vec<f64> = grid.iter().map(|&t| self.eval_unchecked(t)).collect();
        let mut violations = Vec::new();
        let tol = |a: f64, b: f64| 1e-12 * (abs(a) + abs(b));
        for i in 0..grid.len() {
            for j in i + 1..grid.len() {
                let (wi, wj) = (values[i], values[j]);
                if wi > wj + tol(wi, wj) {
                    violations.push(Violation {
                        axiom: Axiom::Nondecreasing,
                        witness: (grid[i], grid[j]),
                        values: (wi, wj),
                    });
                }
                let ri = ratio(grid[i], wi);
                let rj = ratio(grid[j], wj);
                if ri > rj + tol(ri, rj) {
                    violations.push(Violation {
                        axiom: Axiom::RatioNondecreasing,
                        witness: (grid[i], grid[j]),
                        values: (ri, rj),
                    });
                }
            }
        }
        let probe = f64::MIN_POSITIVE;
        let w_probe = self.eval_unchecked(probe);
        if w_probe.is_nan() || w_probe >= ZERO_LIMIT_DECAY * values[0] {
            violations.push(Violation {
                axiom: Axiom::VanishesAtZero,
                witness: (probe, grid[0]),
                values: (w_probe, values[0]),
            });
        }
        Ok(ValidationReport { grid: grid.to_vec(), violations })
    }

    /// `1/ω(probe)`, a proxy for `lim_{t→∞} 1/ω(t)`.
    pub fn limit_at_infinity_reciprocal(&self, probe: f64) -> Result<f64> {
        if probe.is_nan() || probe < 1.0 {
            return Err(Error::Domain(format!("probe must be >= 1, got {probe}")));
        }
        Ok(1.0 / self.eval(probe)?)
    }
}

fn ratio(t: f64, w: f64) -> f64 {
    if w > 0.0 {
        t / w
    } else {
        f64::INFINITY
    }
}

fn check_exponent(a: f64) -> Result<()> {
    if a > 0.0 && a <= 1.0 {
        Ok(())
    } else {
        Err(Error::Input(format!("exponent must lie in (0, 1], got {a}")))
    }
}

/// A log-spaced default grid `10^-6 .. 10^6`, 121 points.
pub fn default_grid() -> Vec<f64> {
    (0..=120).map(|i| powf(10.0, -6.0 + i as f64 * 0.1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        assert_eq!(Modulus::power(0.5).unwrap().eval(4.0).unwrap(), 2.0);
        assert_eq!(Modulus::Linear.eval(1.0).unwrap(), 1.0);
        assert_eq!(Modulus::capped(1.0, 2.0).unwrap().eval(5.0).unwrap(), 2.0);
        assert!(matches!(Modulus::Linear.eval(0.0), Err(Error::Domain(_))));
        assert!(matches!(Modulus::Linear.eval(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn table_interpolates_and_extrapolates() {
        let m = Modulus::table(vec![(1.0, 1.0), (2.0, 1.5)]).unwrap();
        assert_eq!(m.eval(0.5).unwrap(), 0.5);
        assert_eq!(m.eval(1.5).unwrap(), 1.25);
        assert_eq!(m.eval(10.0).unwrap(), 1.5);
    }

    #[test]
    fn validate_examples() {
        let r = Modulus::power(0.5).unwrap().validate(&[0.1, 1.0, 10.0]).unwrap();
        assert!(r.is_valid());
        let r = Modulus::Linear.validate(&[1.0, 2.0, 3.0]).unwrap();
        assert!(r.is_valid());
        // ω(t) = t² encoded as a table: t/ω = 1/t decreases.
        let sq = Modulus::table(vec![(0.1, 0.01), (1.0, 1.0)]).unwrap();
        let r = sq.validate(&[0.1, 1.0]).unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::RatioNondecreasing && v.witness == (0.1, 1.0)));
    }

    #[test]
    fn validate_rejects_bad_grids() {
        assert!(Modulus::Linear.validate(&[]).is_err());
        assert!(Modulus::Linear.validate(&[1.0]).is_err());
        assert!(Modulus::Linear.validate(&[2.0, 1.0]).is_err());
        assert!(Modulus::Linear.validate(&[-1.0, 1.0]).is_err());
    }

    #[test]
    fn decreasing_table_flags_monotonicity() {
        let m = Modulus::table(vec![(1.0, 2.0), (2.0, 1.0)]).unwrap();
        let r = m.validate(&[1.0, 2.0]).unwrap();
        assert!(r.violations.iter().any(|v| v.axiom == Axiom::Nondecreasing));
    }

    #[test]
    fn limit_proxy_examples() {
        let l = Modulus::Linear.limit_at_infinity_reciprocal(1e9).unwrap();
        assert!((l - 1e-9).abs() < 1e-24);
        let c = Modulus::capped(1.0, 2.0).unwrap();
        assert_eq!(c.limit_at_infinity_reciprocal(1e9).unwrap(), 0.5);
        let p = Modulus::power(0.5).unwrap();
        assert!((p.limit_at_infinity_reciprocal(1e8).unwrap() - 1e-4).abs() < 1e-18);
        assert!(p.limit_at_infinity_reciprocal(0.5).is_err());
    }

    #[test]
    fn parameters_are_checked() {
        assert!(Modulus::power(0.0).is_err());
        assert!(Modulus::power(1.5).is_err());
        assert!(Modulus::capped(0.5, 0.0).is_err());
        assert!(Modulus::table(vec![]).is_err());
        assert!(Modulus::table(vec![(1.0, 1.0), (1.0, 2.0)]).is_err());
    }

    fn builtin() -> impl Strategy<Value = Modulus> {
        prop_oneof![
            Just(Modulus::Linear),
            (0.01f64..=1.0).prop_map(|a| Modulus::Power { exponent: a }),
            (0.01f64..=1.0, 0.1f64..10.0).prop_map(|(a, c)| Modulus::Capped { exponent: a, cap: c }),
        ]
    }

    proptest! {
        #[test]
        fn builtins_pass_on_sorted_grids(m in builtin(), mut g in prop::collection::vec(1e-6f64..1e6, 2..40)) {
            g.sort_by(|a, b| a.partial_cmp(b).unwrap());
            g.dedup();
            prop_assume!(g.len() >= 2);
            let r = m.validate(&g).unwrap();
            let monotone: Vec<_> = r.violations.iter().filter(|v| v.axiom != Axiom::VanishesAtZero).collect();
            prop_assert!(monotone.is_empty(), "{:?}", monotone);
        }

        #[test]
        fn eval_is_monotone(m in builtin(), a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(m.eval(lo).unwrap() <= m.eval(hi).unwrap());
        }

        #[test]
        fn eval_over_t_is_nonincreasing(m in builtin(), a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let r_lo = m.eval(lo).unwrap() / lo;
            let r_hi = m.eval(hi).unwrap() / hi;
            prop_assert!(r_hi <= r_lo * (1.0 + 1e-12));
        }
    }

    #[test]
    fn builtins_vanish_at_zero_for_moderate_exponents() {
        for m in [
            Modulus::Linear,
            Modulus::power(0.5).unwrap(),
            Modulus::power(0.05).unwrap(),
            Modulus::capped(0.3, 1.0).unwrap(),
        ] {
            assert!(m.validate(&default_grid()).unwrap().is_valid(), "{m:?}");
        }
        let flat = Modulus::table(vec![(1e-3, 1.0), (1.0, 1.0)]).unwrap();
        assert!(flat.validate(&[1e-2, 1.0]).unwrap().is_valid());
    }
}
