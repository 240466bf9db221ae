use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monodromy {value} at mark {mark} is outside 1..={r}")]
    Range { mark: usize, value: i64, r: i64 },

    #[error("divisibility fails: -2 + n - sum(m) = {residue} is not a multiple of r = {r}")]
    Divisibility { residue: i64, r: i64 },

    #[error("unsupported size: {0}")]
    Size(String),

    #[error("{subset} is not a proper two-sided split of {n} marks")]
    Split { subset: String, n: usize },

    #[error("incompatible vectors: {0}")]
    Incompatible(String),

    #[error("not comparable in the dominance order: {0}")]
    NotComparable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integrality violated for {input}: {value} is not an integer multiple of (n-3)!/r^(n-3)")]
    IntegralityViolation { input: String, value: String },

    #[error("anchor error: {0}")]
    Anchor(String),

    #[error("cycle dimension {dim} is outside 0..={max}")]
    Dimension { dim: i64, max: i64 },

    #[error("face error: {0}")]
    Face(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
}

impl Error {
    pub(crate) fn parse(line: usize, field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field: field.into(),
            message: message.into(),
        }
    }
}
