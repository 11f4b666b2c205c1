use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("curve is singular (discriminant is zero)")]
    SingularCurve,
    #[error("point {0} does not lie on the curve")]
    NotOnCurve(String),
    #[error("translation point {0} has finite order")]
    FiniteOrder(String),
    #[error("unsupported point {point}: {reason}")]
    UnsupportedPoint { point: String, reason: &'static str },
    #[error("arithmetic error: {0}")]
    Arithmetic(&'static str),
    #[error("points {0} and {1}: orbit relation undecided within index cap {2}")]
    IndeterminateOrbit(String, String, i64),
    #[error("divisor is not virtually effective")]
    NotVirtuallyEffective,
    #[error("orbit of {0} has negative coefficient sum {1}")]
    NegativeOrbitSum(String, i64),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("incompatible spaces: {0}")]
    Incompatible(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("could not find enough admissible sample points: {0}")]
    Sampling(String),
    #[error("degenerate Sklyanin parameters: {0}")]
    Degenerate(String),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
