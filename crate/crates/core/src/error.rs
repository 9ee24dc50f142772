use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{location}self-loop on vertex {vertex}")]
    SelfLoop { location: Location, vertex: i64 },

    #[error("{location}negative vertex index {value}")]
    NegativeIndex { location: Location, value: i64 },

    #[error("{location}{message}")]
    Parse { location: Location, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("assumption unsatisfiable: no connected non-bipartite sample after {attempts} attempts")]
    AssumptionUnsatisfiable { attempts: usize },

    #[error("vertex {0} is isolated (degree 0); the transition matrix is undefined")]
    IsolatedVertex(usize),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not a probability vector: entries sum to {sum}")]
    NotNormalized { sum: f64 },

    #[error("vector entry {index} is {value}; entries must be finite and nonnegative")]
    InvalidEntry { index: usize, value: f64 },

    #[error("row {row} of the matrix is not stochastic: {reason}")]
    NotRowStochastic { row: usize, reason: String },

    #[error("dense computation is capped at n = {cap}, got n = {n}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("f is not stationary for A^T: |A^T f - f|_1 = {defect:e}")]
    NotStationary { defect: f64 },

    #[error("matrix has nonzero diagonal entry in row {row}")]
    NonZeroDiagonal { row: usize },

    #[error("matrix is numerically singular")]
    Singular,
}

impl Error {
    /// Stable identifier used in machine-readable diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SelfLoop { .. } => "E_SELF_LOOP",
            Error::NegativeIndex { .. } => "E_NEGATIVE_INDEX",
            Error::Parse { .. } => "E_PARSE",
            Error::InvalidParameter(_) => "E_INVALID_PARAMETER",
            Error::AssumptionUnsatisfiable { .. } => "E_ASSUMPTION_UNSATISFIABLE",
            Error::IsolatedVertex(_) => "E_ISOLATED_VERTEX",
            Error::EmptyEdgeSet => "E_EMPTY_EDGE_SET",
            Error::DimensionMismatch { .. } => "E_DIMENSION_MISMATCH",
            Error::NotNormalized { .. } => "E_NOT_NORMALIZED",
            Error::InvalidEntry { .. } => "E_INVALID_ENTRY",
            Error::NotRowStochastic { .. } => "E_NOT_ROW_STOCHASTIC",
            Error::DenseCapExceeded { .. } => "E_DENSE_CAP",
            Error::NotStationary { .. } => "E_NOT_STATIONARY",
            Error::NonZeroDiagonal { .. } => "E_NONZERO_DIAGONAL",
            Error::Singular => "E_SINGULAR",
        }
    }
}

/// Where in an input a problem was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Location {
    #[default]
    Unknown,
    /// 1-based line in an edge-list file.
    Line(usize),
    /// 0-based position in a pair sequence.
    Pair(usize),
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Unknown => Ok(()),
            Location::Line(l) => write!(f, "line {l}: "),
            Location::Pair(p) => write!(f, "pair {p}: "),
        }
    }
}
