use thiserror::Error;

/// Errors produced by tower, divisor, point and Seshadri computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Bott numbers: {0}")]
    MalformedBottNumbers(String),

    #[error("tower dimension {n} is outside the supported range 1..={max}")]
    DimensionOutOfRange { n: usize, max: usize },

    /// A maximal cone failed the unimodularity check. Unreachable for Bott
    /// data, so seeing this means an internal consistency failure.
    #[error("maximal cone {cone} is not smooth (determinant {determinant})")]
    NonSmoothFan { cone: String, determinant: String },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("Bott number c[{i},{j}] = {value} is not positive")]
    NonPositiveBottNumbers { i: usize, j: usize, value: String },

    #[error("divisor class is not nef: coefficient a_{index} = {value} is negative")]
    NotNef { index: usize, value: String },

    #[error("invalid point: coordinate pair {0} is (0, 0)")]
    InvalidPair(usize),

    #[error("point has unspecified coordinate values")]
    MissingValues,

    #[error("singular linear system")]
    SingularSystem,

    #[error("linear system has no integral solution")]
    NonIntegralSolution,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedBottNumbers(_) => "MalformedBottNumbers",
            Error::DimensionOutOfRange { .. } => "DimensionOutOfRange",
            Error::NonSmoothFan { .. } => "NonSmoothFan",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NonPositiveBottNumbers { .. } => "NonPositiveBottNumbers",
            Error::NotNef { .. } => "NotNef",
            Error::InvalidPair(_) => "InvalidPair",
            Error::MissingValues => "MissingValues",
            Error::SingularSystem => "SingularSystem",
            Error::NonIntegralSolution => "NonIntegralSolution",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}

pub(crate) fn check_index(index: usize, lo: usize, hi: usize) -> Result<()> {
    if (lo..=hi).contains(&index) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, lo, hi })
    }
}
