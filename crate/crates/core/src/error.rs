use thiserror::Error;

/// A syntax error in element, scalar, or fixture text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset} in `{input}`: {message}")]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            offset,
            message: message.into(),
        }
    }
}

/// Precondition and validation failures. Axiom failures are never errors;
/// they are reported as verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("N must be ≥ 2 (got {0})")]
    InvalidModulus(i64),
    #[error("element `{element}` is not in the cone subalgebra for N = {modulus}")]
    NotInCone { element: String, modulus: u32 },
    #[error("invalid vector in H: {0}")]
    InvalidHVector(String),
    #[error("dimension mismatch in {field}: expected {expected}, found {found}")]
    DimensionMismatch {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("the Dirac operator is not hermitian")]
    NonHermitianD,
    #[error("real structure: {0}")]
    BadJSquare(String),
    #[error("grading: {0}")]
    GammaFails(String),
    #[error("order zero fails: {0}")]
    OrderZeroViolated(String),
    #[error("order one fails: {0}")]
    OrderOneViolated(String),
    #[error("conformal factor: {0}")]
    BadFactor(String),
    #[error("conjugation by ν does not fix k·k′")]
    TwistIncompatible,
    #[error("α + ε′α′ is not hermitian")]
    NotSelfAdjoint,
    #[error("no KO-dimension has signs {0}")]
    NotInTable(String),
    #[error("invalid sign {0}: expected +1 or -1")]
    InvalidSign(i64),
    #[error("{0} is not in the span of the represented algebra")]
    NotInAlgebra(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE_ERROR",
            Error::InvalidModulus(_) => "INVALID_MODULUS",
            Error::NotInCone { .. } => "NOT_IN_CONE",
            Error::InvalidHVector(_) => "INVALID_HVECTOR",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::NonHermitianD => "NON_HERMITIAN_D",
            Error::BadJSquare(_) => "BAD_J_SQUARE",
            Error::GammaFails(_) => "GAMMA_FAILS",
            Error::OrderZeroViolated(_) => "ORDER_ZERO_VIOLATED",
            Error::OrderOneViolated(_) => "ORDER_ONE_VIOLATED",
            Error::BadFactor(_) => "BAD_FACTOR",
            Error::TwistIncompatible => "TWIST_INCOMPATIBLE",
            Error::NotSelfAdjoint => "NOT_SELFADJOINT",
            Error::NotInTable(_) => "NOT_IN_TABLE",
            Error::InvalidSign(_) => "INVALID_SIGN",
            Error::NotInAlgebra(_) => "NOT_IN_ALGEBRA",
            Error::Config(_) => "CONFIG_ERROR",
            Error::Io { .. } => "IO_ERROR",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
