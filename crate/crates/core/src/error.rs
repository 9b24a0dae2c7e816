use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { context: &'static str, expected: (usize, usize), found: (usize, usize) },
    NotSquare { rows: usize, cols: usize },
    /// Gram matrix failed the leading-principal-minor test.
    NotPositiveDefinite { index: usize },
    NotSymmetric,
    DegreeOutOfRange { degree: usize, max: usize },
    /// `d_{j+1} d_j != 0`.
    NotAComplex { degree: usize },
    ZeroPolynomial,
    NotUnimodular,
    NotAlexander { value_at_one: String },
    NotAcyclic { degree: usize },
    NotStronglyAcyclic(String),
    WeightOrder(String),
    VariableCount { expected: usize, found: usize },
    GroupAction(String),
    Precondition(String),
    NumericalFailure(String),
    Parse { position: usize, message: String },
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { context, expected, found } => write!(
                f,
                "dimension mismatch in {context}: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::NotPositiveDefinite { index } => {
                write!(f, "gram matrix is not positive definite (leading minor {index} <= 0)")
            }
            Error::NotSymmetric => write!(f, "gram matrix is not symmetric"),
            Error::DegreeOutOfRange { degree, max } => {
                write!(f, "degree {degree} out of range 0..={max}")
            }
            Error::NotAComplex { degree } => {
                write!(f, "d_{} * d_{} is not zero", degree + 1, degree)
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::NotUnimodular => write!(f, "matrix is not unimodular (det != ±1)"),
            Error::NotAlexander { value_at_one } => {
                write!(f, "not an Alexander polynomial: |p(1)| = {value_at_one} != 1")
            }
            Error::NotAcyclic { degree } => {
                write!(f, "complex is not l2-acyclic: det Laplacian vanishes in degree {degree}")
            }
            Error::NotStronglyAcyclic(why) => write!(f, "weight is not strongly acyclic: {why}"),
            Error::WeightOrder(why) => write!(f, "invalid weight: {why}"),
            Error::VariableCount { expected, found } => {
                write!(f, "expected {expected} variable(s), found {found}")
            }
            Error::GroupAction(why) => write!(f, "invalid group action: {why}"),
            Error::Precondition(why) => write!(f, "precondition violated: {why}"),
            Error::NumericalFailure(why) => write!(f, "numerical failure: {why}"),
            Error::Parse { position, message } => {
                write!(f, "parse error at offset {position}: {message}")
            }
            Error::InvalidArgument(why) => write!(f, "invalid argument: {why}"),
        }
    }
}

impl core::error::Error for Error {}
