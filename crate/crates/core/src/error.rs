use alloc::string::String;
use core::fmt;

/// Errors raised by the numerical routines.
///
/// `Input` covers every violated precondition (bad shapes, coincident
/// points, out-of-range parameters); `Numerical` covers quadrature or solver
/// breakdown. The CLI maps the two families to different exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation outside the domain of a function, e.g. `ω(t)` for `t <= 0`.
    Domain(String),
    /// Malformed or inconsistent input.
    Input(String),
    /// A derivative of order larger than what the object carries.
    Order { requested: usize, available: usize },
    /// A non-finite value produced by a user-supplied function.
    Evaluation(String),
    /// The operation is not available for this configuration.
    Unsupported(String),
    /// Combinatorial guard tripped (subset enumeration).
    Size { required: u128, limit: u128 },
    /// Quadrature did not reach its tolerance.
    Quadrature { estimate: f64, error: f64, intervals: usize },
    /// The LP solver broke down; the log holds the last pivots.
    Solver { message: String, log: alloc::vec::Vec<String> },
}

impl Error {
    /// True for errors caused by the caller's input rather than by numerics.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Input(_)
                | Error::Order { .. }
                | Error::Unsupported(_)
                | Error::Size { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::Order { requested, available } => write!(
                f,
                "order error: derivative of order {requested} requested, only {available} available"
            ),
            Error::Evaluation(m) => write!(f, "evaluation error: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Size { required, limit } => write!(
                f,
                "size error: {required} subsets required, limit is {limit}"
            ),
            Error::Quadrature { estimate, error, intervals } => write!(
                f,
                "quadrature did not converge: estimate {estimate:e}, error {error:e} after {intervals} intervals"
            ),
            Error::Solver { message, log } => {
                write!(f, "solver error: {message}")?;
                if let Some(last) = log.last() {
                    write!(f, " (last pivot: {last})")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
