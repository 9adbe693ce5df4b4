use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("shape mismatch: expected {expected} values, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("field is not Hermitian-symmetric (max defect {defect:e})")]
    Symmetry { defect: f64 },

    #[error("symbol is not positive at frequency {frequency:?}: A(n) = {value:e}")]
    Positivity { frequency: Vec<i64>, value: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The inversion denominator `T^ρ E_{ρ,ρ+1}(-A(n) T^ρ)` fell below the floor.
    #[error("amplification overflow: denominator {denominator:e} below floor {floor:e}")]
    AmplificationOverflow { denominator: f64, floor: f64 },

    /// Extended-precision series cannot certify the requested tolerance.
    #[error("cancellation: achievable error bound {bound:e} exceeds tolerance {tol:e}")]
    Cancellation { bound: f64, tol: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for this error class: 1 configuration, 2 i/o,
    /// 3 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Io(_) => 2,
            _ => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(std::io::Error::other(e))
        } else {
            Error::Config(e.to_string())
        }
    }
}
