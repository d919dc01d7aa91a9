use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {op} got {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("invalid numeric context: {0}")]
    InvalidContext(&'static str),
    #[error("invalid norm specification: {0}")]
    InvalidNorm(String),
    #[error("{op} is only supported natively under l2, got {norm}")]
    UnsupportedNorm { op: &'static str, norm: String },
    #[error("{op} requires a smooth norm (l2 or lp), got {norm}")]
    NonSmoothNorm { op: &'static str, norm: String },
    #[error("no group inverse: g*f is singular (smallest singular value ratio {min_singular_ratio:e})")]
    NoGroupInverse { min_singular_ratio: f64 },
    #[error("not EP: {0}")]
    NotEp(&'static str),
    #[error("hermitian verdict inconclusive (deviation {deviation:e})")]
    Inconclusive { deviation: f64 },
    #[error("eigenvalue iteration did not converge")]
    EigenSolver,
    #[error("unknown theorem item {theorem}({label})")]
    UnknownItem { theorem: &'static str, label: String },
    #[error("unknown theorem {0}")]
    UnknownTheorem(String),
    #[error("unknown generator kind {0}")]
    UnknownKind(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("invalid rank {rank} for {kind} with n = {n}")]
    InvalidRank {
        kind: &'static str,
        n: usize,
        rank: usize,
    },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(&'static str),
    #[error("generated sample {id} failed verification: {reason}")]
    GenerationFailed { id: String, reason: String },
}
