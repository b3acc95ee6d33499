use core::fmt;

/// Errors raised by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands were built over a different number of `(x, p)` pairs.
    DimensionMismatch { left: usize, right: usize },
    /// A variable index outside `1..=n_pairs`.
    BadVariable { index: usize, n_pairs: usize },
    /// The operation is only defined for a specific number of pairs.
    UnsupportedDimension {
        operation: &'static str,
        n_pairs: usize,
    },
    /// `n_pairs` must be at least one.
    ZeroPairs,
    /// Two dense matrices of different sizes.
    SizeMismatch { left: usize, right: usize },
    /// A dense block is not a combination of `E(a,b)` matrices.
    NotInSpan { row: usize, col: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} pairs vs {right} pairs")
            }
            Error::BadVariable { index, n_pairs } => {
                write!(f, "variable index {index} out of range 1..={n_pairs}")
            }
            Error::UnsupportedDimension { operation, n_pairs } => write!(
                f,
                "{operation} is only defined on the plane (n_pairs = 1), got n_pairs = {n_pairs}"
            ),
            Error::ZeroPairs => f.write_str("n_pairs must be at least 1"),
            Error::SizeMismatch { left, right } => {
                write!(f, "matrix size mismatch: {left} vs {right}")
            }
            Error::NotInSpan { row, col } => write!(
                f,
                "entry ({row}, {col}) is not consistent with an E-basis expansion"
            ),
        }
    }
}

impl core::error::Error for Error {}
