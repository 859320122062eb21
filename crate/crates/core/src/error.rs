use thiserror::Error;

/// Errors raised by the matrix layer, the function catalog, the map
/// constructors and the chain verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("malformed matrix data: {0}")]
    Malformed(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("eigenvalue {eigenvalue} lies outside the domain ({lower}, {upper}) of `{function}`")]
    DomainViolation {
        function: String,
        eigenvalue: f64,
        lower: f64,
        upper: f64,
    },

    #[error("matrix is not strictly positive (smallest eigenvalue {min_eigenvalue:e})")]
    Singular { min_eigenvalue: f64 },

    #[error("mean weight {0} is outside [0, 1]")]
    InvalidWeight(f64),

    #[error("invalid spectral band: m = {m}, M = {upper}")]
    InvalidBand { m: f64, upper: f64 },

    #[error("invalid positive map: {0}")]
    InvalidMap(String),

    #[error("function `{0}` is not strictly positive on its domain")]
    NotPositive(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("catalog entry `{function}` failed the {property} probe (gap {gap:e})")]
    CatalogProbe {
        function: String,
        property: &'static str,
        gap: f64,
    },

    #[error("instance rejected by `{chain}`: {reason}")]
    Rejected { chain: String, reason: String },

    #[error("`{chain}`: intermediate `{term}` is not strictly positive (smallest eigenvalue {min_eigenvalue:e})")]
    NonPositiveIntermediate {
        chain: String,
        term: String,
        min_eigenvalue: f64,
    },

    #[error("unknown chain `{0}`")]
    UnknownChain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(e.to_string())
        } else {
            Error::Json(e.to_string())
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
