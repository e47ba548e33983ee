use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("ring needs at least two variables, got {0}")]
    TooFewVariables(usize),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix has wrong shape: expected {expected}x{expected}, got {rows}x{cols}")]
    MatrixShape { expected: usize, rows: usize, cols: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("monomial order mismatch: {0}")]
    OrderMismatch(String),

    #[error("ideal is not homogeneous")]
    NotHomogeneous,

    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),

    #[error("point {0} has all coordinates zero")]
    ZeroPoint(usize),

    #[error("point {index} has {got} coordinates, ring has {expected} variables")]
    PointDimension { index: usize, got: usize, expected: usize },

    #[error("ideal defines the empty projective scheme")]
    EmptyScheme,

    #[error("no Noether position found after {trials} trials; last initial ideal: {last_initial}")]
    NoetherPosition { trials: usize, last_initial: String },

    #[error("ring index t = {t} out of range 0..={max}")]
    RingIndex { t: usize, max: usize },

    #[error("Betti table is truncated at cap {cap}")]
    Truncated { cap: usize },

    #[error("empty Betti table")]
    EmptyTable,

    #[error("invalid formula parameters: {0}")]
    FormulaParameter(String),

    #[error("cancellation inequality violated at (i, j) = ({i}, {j}): {ideal} > {initial}")]
    CancellationViolated {
        i: usize,
        j: usize,
        ideal: u64,
        initial: u64,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("ideal file, line {line}, column {column}: {message}")]
    IdealFile {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported field `{0}`")]
    UnsupportedField(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),
}
