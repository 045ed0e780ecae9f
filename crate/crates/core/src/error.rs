use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("invalid problem `{name}`: {reason}")]
    InvalidProblem { name: String, reason: String },

    #[error("grid too small: N = {n}, need N >= {min}")]
    GridTooSmall { n: usize, min: usize },

    #[error("invalid domain length {0}; must be finite and positive")]
    InvalidLength(f64),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("singular operator: pivot {pivot:e} at row {row}")]
    Singular { row: usize, pivot: f64 },

    #[error("sub-diagonal coefficient is zero")]
    ZeroSubdiagonal,

    #[error("operator is not symmetric (a = {a}, c = {c})")]
    Asymmetric { a: f64, c: f64 },

    #[error("a*c = {0} < 0: complex spectrum")]
    ComplexSpectrum(f64),

    #[error("exactly one off-diagonal coefficient is zero; the operator is defective")]
    DefectiveCoupling,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("indices must differ (i = j = {0})")]
    EqualIndices(usize),

    #[error("step {0} is a multiple of 2*pi")]
    DegenerateStep(f64),

    #[error("value {value} outside {domain}")]
    OutOfDomain { value: f64, domain: String },

    #[error("invalid refinement ladder: {0}")]
    InvalidLadder(String),

    #[error("norm `{0}` has no stability constant; use l2 or l2h")]
    UnsupportedNorm(&'static str),

    #[error("solve failed at refinement level N = {n}: {source}")]
    LevelFailed { n: usize, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
