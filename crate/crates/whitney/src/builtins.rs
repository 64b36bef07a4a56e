//! Built-in test functions and sets.

use serde::Deserialize;
use whitney_core::markov::Shape;
use whitney_core::{MultiIndex, Smooth};

use crate::error::{input, CliResult};
use crate::formats::load;

/// Tensor-product test functions on `R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinKind {
    /// `Π sin x_i`
    Sin,
    /// `Π |sin x_i|`, Lipschitz only.
    AbsSin,
    /// `Π exp(−x_i²)`
    Gauss,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Builtin {
    pub kind: BuiltinKind,
    pub n: usize,
}

/// Highest derivative order offered by the smooth built-ins.
const SMOOTH_ORDER: usize = 8;

/// `d^m/dt^m exp(−t²) = (−1)^m H_m(t) exp(−t²)` with physicists' Hermite `H_m`.
fn gauss_derivative(m: u32, t: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * t);
    let h = match m {
        0 => h0,
        _ => {
            for j in 1..m {
                let next = 2.0 * t * h1 - 2.0 * j as f64 * h0;
                h0 = h1;
                h1 = next;
            }
            h1
        }
    };
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * h * (-t * t).exp()
}

fn sin_derivative(m: u32, t: f64) -> f64 {
    match m % 4 {
        0 => t.sin(),
        1 => t.cos(),
        2 => -t.sin(),
        _ => -t.cos(),
    }
}

impl Smooth for Builtin {
    fn dim(&self) -> usize {
        self.n
    }

    fn max_order(&self) -> usize {
        match self.kind {
            BuiltinKind::AbsSin => 0,
            _ => SMOOTH_ORDER,
        }
    }

    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64 {
        alpha
            .entries()
            .iter()
            .zip(x)
            .map(|(&m, &t)| match self.kind {
                BuiltinKind::Sin => sin_derivative(m, t),
                BuiltinKind::AbsSin => t.sin().abs(),
                BuiltinKind::Gauss => gauss_derivative(m, t),
            })
            .product()
    }
}

/// Piecewise-linear interpolation of a one-dimensional table, constant
/// beyond its ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1D {
    xs: Vec<f64>,
    fs: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    x: Vec<f64>,
    f: Vec<f64>,
}

impl Table1D {
    pub fn new(xs: Vec<f64>, fs: Vec<f64>) -> CliResult<Self> {
        if xs.is_empty() || xs.len() != fs.len() {
            return Err(input(format!("table: {} abscissae and {} values", xs.len(), fs.len())));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) || xs.iter().chain(&fs).any(|v| !v.is_finite()) {
            return Err(input("table: abscissae must be finite and strictly increasing"));
        }
        Ok(Table1D { xs, fs })
    }
}

impl Smooth for Table1D {
    fn dim(&self) -> usize {
        1
    }

    fn max_order(&self) -> usize {
        0
    }

    fn derivative(&self, _alpha: &MultiIndex, x: &[f64]) -> f64 {
        let t = x[0];
        let i = self.xs.partition_point(|&v| v <= t);
        if i == 0 {
            return self.fs[0];
        }
        if i == self.xs.len() {
            return self.fs[i - 1];
        }
        let s = (t - self.xs[i - 1]) / (self.xs[i] - self.xs[i - 1]);
        self.fs[i - 1] + s * (self.fs[i] - self.fs[i - 1])
    }
}

/// The function selected by `builtin:<name>` or `table:<file>`.
pub enum TestFunction {
    Builtin(Builtin),
    Table(Table1D),
}

impl Smooth for TestFunction {
    fn dim(&self) -> usize {
        match self {
            TestFunction::Builtin(b) => b.dim(),
            TestFunction::Table(t) => t.dim(),
        }
    }

    fn max_order(&self) -> usize {
        match self {
            TestFunction::Builtin(b) => b.max_order(),
            TestFunction::Table(t) => t.max_order(),
        }
    }

    fn derivative(&self, alpha: &MultiIndex, x: &[f64]) -> f64 {
        match self {
            TestFunction::Builtin(b) => b.derivative(alpha, x),
            TestFunction::Table(t) => t.derivative(alpha, x),
        }
    }
}

pub fn parse_function(spec: &str, n: usize) -> CliResult<TestFunction> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let kind = match name {
            "sin" => BuiltinKind::Sin,
            "abs_sin" => BuiltinKind::AbsSin,
            "gauss" => BuiltinKind::Gauss,
            other => return Err(input(format!("unknown builtin function {other:?} (sin, abs_sin, gauss)"))),
        };
        Ok(TestFunction::Builtin(Builtin { kind, n }))
    } else if let Some(path) = spec.strip_prefix("table:") {
        if n != 1 {
            return Err(input("tabulated functions are one-dimensional; use --n 1"));
        }
        let t: TableFile = load(path, "table")?;
        Ok(TestFunction::Table(Table1D::new(t.x, t.f)?))
    } else {
        Err(input(format!("function must be builtin:<name> or table:<file>, got {spec:?}")))
    }
}

/// A set for the Markov classifier: a built-in shape or a finite point list.
pub enum SetSource {
    Shape(Shape),
    Points(Vec<Vec<f64>>),
}

impl SetSource {
    /// `S ∩ Q_r(x)`; `m` is the resolution per axis for shapes.
    pub fn sample(&self, center: &[f64], r: f64, m: usize) -> Vec<Vec<f64>> {
        match self {
            SetSource::Shape(s) => s.sample(center, r, m),
            SetSource::Points(pts) => pts
                .iter()
                .filter(|p| p.iter().zip(center).all(|(a, c)| (a - c).abs() <= r))
                .cloned()
                .collect(),
        }
    }
}

/// `builtin:cube` (`[-1,1]^n`), `builtin:ball` (unit ball),
/// `builtin:segment` (from `-e_1` to `e_1`), `builtin:point` (the origin).
pub fn parse_shape(name: &str, n: usize) -> CliResult<Shape> {
    let unit = |s: f64| {
        let mut e = vec![0.0; n];
        e[0] = s;
        e
    };
    Ok(match name {
        "cube" => Shape::Cube { half_side: 1.0 },
        "ball" => Shape::Ball { radius: 1.0 },
        "segment" => Shape::Segment { from: unit(-1.0), to: unit(1.0) },
        "point" => Shape::Point(vec![0.0; n]),
        other => return Err(input(format!("unknown builtin shape {other:?} (cube, ball, segment, point)"))),
    })
}
