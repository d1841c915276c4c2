use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix data length {len} does not match shape {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, len: usize },

    #[error("{op} requires a nonempty matrix")]
    Empty { op: &'static str },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("rank preservation violated for {which}: rank {found}, expected {expected}")]
    RankPreservation {
        which: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("rank preservation unachievable after {attempts} draws (target rank {target})")]
    RankPreservationUnachievable { target: usize, attempts: usize },

    #[error("{space} space containment violated: relative residual {residual:e}")]
    Containment { space: &'static str, residual: f64 },

    #[error("right-hand side is outside the column space: residual {residual:e}")]
    NoSolution { residual: f64, projection: Vec<f64> },

    #[error("matrix is singular to working precision at pivot step {step}")]
    Singular { step: usize },

    #[error("index {index} out of range for {axis} of length {len}")]
    IndexOutOfRange {
        axis: &'static str,
        index: usize,
        len: usize,
    },

    #[error("duplicate {axis} index {index}")]
    DuplicateIndex { axis: &'static str, index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not diagonal: entry ({row}, {col}) = {value:e}")]
    NotDiagonal { row: usize, col: usize, value: f64 },

    #[error("dictionary construction failed after {attempts} draws")]
    DictionaryExhausted { attempts: usize },

    #[error("decode failed for column {column}: nearest distance {distance:e} exceeds {limit:e}")]
    DecodeMargin {
        column: usize,
        distance: f64,
        limit: f64,
    },

    #[error("ambiguous decode: columns {first} and {second} are equidistant ({distance:e})")]
    AmbiguousDecode {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("byte {0} has no dictionary column")]
    UnmappedSymbol(u8),

    #[error("unsupported file: {0}")]
    Format(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn dim(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            detail: detail.into(),
        }
    }
}
