//! Error type shared across the toolkit.

use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A vector length does not match the expected dimension.
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    /// Two shapes that must agree do not.
    ShapeMismatch {
        context: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A matrix was requested with a zero dimension.
    InvalidDimensions { rows: usize, cols: usize },
    /// Backing storage length does not match `rows * cols`.
    DataLength { expected: usize, got: usize },
    /// A non-finite value reached a constructor or operation.
    NonFinite { context: &'static str },
    /// Input size exceeds an enumeration limit.
    Capacity {
        context: &'static str,
        limit: usize,
        got: usize,
    },
    /// Iteration stopped before reaching tolerance; carries the last estimate.
    Convergence {
        context: &'static str,
        iterations: usize,
        last: f64,
    },
    /// A scalar parameter is outside its allowed range.
    Domain { context: &'static str, value: f64 },
    /// Evaluation at a point where a density diverges or carries an atom.
    Singularity { context: &'static str },
    /// A bisection search hit its cap without meeting the goal.
    Saturated { cap: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::DimensionMismatch {
                context,
                expected,
                got,
            } => write!(f, "{context}: expected dimension {expected}, got {got}"),
            Error::ShapeMismatch {
                context,
                left,
                right,
            } => write!(
                f,
                "{context}: shapes {}x{} and {}x{} are incompatible",
                left.0, left.1, right.0, right.1
            ),
            Error::InvalidDimensions { rows, cols } => {
                write!(f, "invalid matrix dimensions {rows}x{cols}")
            }
            Error::DataLength { expected, got } => {
                write!(f, "entry buffer holds {got} values, expected {expected}")
            }
            Error::NonFinite { context } => write!(f, "{context}: non-finite value"),
            Error::Capacity {
                context,
                limit,
                got,
            } => write!(f, "{context}: size {got} exceeds limit {limit}"),
            Error::Convergence {
                context,
                iterations,
                last,
            } => write!(
                f,
                "{context}: no convergence after {iterations} iterations (last estimate {last})"
            ),
            Error::Domain { context, value } => {
                write!(f, "{context}: value {value} outside allowed range")
            }
            Error::Singularity { context } => write!(f, "{context}: singular point"),
            Error::Saturated { cap } => {
                write!(f, "search saturated at cap {cap} without reaching the goal")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl Error {
    /// True for errors that signal an input too large for an exact method
    /// or an iteration that ran out of budget, as opposed to invalid input.
    pub fn is_capacity_class(&self) -> bool {
        matches!(
            self,
            Error::Capacity { .. } | Error::Convergence { .. } | Error::Saturated { .. }
        )
    }
}
