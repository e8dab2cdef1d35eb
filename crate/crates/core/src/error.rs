use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("non-positive value for `{key}`: {value}")]
    NonPositive { key: String, value: f64 },
    #[error("inconsistent override of `{key}`: given {given}, bases imply {implied}")]
    InconsistentOverride { key: String, given: f64, implied: f64 },
    #[error("constants: {0}")]
    ConstantsInconsistent(String),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate entry `{0}`")]
    Duplicate(String),
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("missing quantum number `{0}`")]
    MissingQuantumNumber(&'static str),
    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),
    #[error("flux too large for perturbative treatment: eΦ/h = {ratio} with n = {n}")]
    FluxTooLarge { ratio: f64, n: f64 },
    #[error("quadrature did not converge: estimated error {estimated_error:e} > requested {requested:e}")]
    QuadratureNonConvergence { estimated_error: f64, requested: f64 },
    #[error("no hyperfine structure: nuclear spin I = 0")]
    NoHyperfineStructure,
    #[error("closed form of {what} disagrees with flux chain: {closed} vs {chained}")]
    ClosedFormMismatch { what: &'static str, closed: f64, chained: f64 },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
