use thiserror::Error;

/// Errors raised by transform construction, evaluation and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate parameter set: b must be nonzero")]
    DegenerateParams,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("incompatible steps: {0}")]
    IncompatibleSteps(String),

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("window has zero norm")]
    ZeroWindow,

    #[error("non-invertible window pair: |<phi, psi>| = {0:e}")]
    NonInvertibleWindowPair(f64),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("quadrature: {0}")]
    Quadrature(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("window spectrum vanishes: min |Q[phi_u]| = {min:e} <= {floor:e}")]
    WindowSpectrumVanishes { min: f64, floor: f64 },

    #[error("ill-posed: Psi vanishes (min |Psi| = {min:e} <= floor {floor:e})")]
    IllPosed { min: f64, floor: f64 },

    #[error("quotient not square-summable (grid L2 norm {0:e})")]
    NotSquareSummable(f64),

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("bad magic: expected \"WQPF\"")]
    BadMagic,

    #[error("unsupported file version {0}")]
    UnsupportedVersion(u32),

    #[error("unexpected file kind {0}")]
    UnexpectedKind(u8),

    #[error("truncated payload: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },

    #[error("non-uniform grid at row {0}")]
    NonUniformGrid(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
