use thiserror::Error;

/// Errors raised by the arithmetic, synthesis and I/O layers.
///
/// Internal consistency failures (a reduction that did not make progress, a
/// pattern that matched nothing) are reported as [`SynthError::Invariant`] or
/// [`SynthError::NoMatch`] rather than being papered over.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed matrix: {0}")]
    Shape(String),

    #[error("matrix is not orthogonal")]
    NotOrthogonal,

    #[error("vector is not a unit vector")]
    NotUnit,

    #[error("generator {generator} is not valid at dimension {n}")]
    InvalidGenerator { generator: String, n: usize },

    #[error("odd scaled denominator exponent is impossible at odd dimension {0}")]
    OddExponentOddDimension(usize),

    #[error("scaled denominator exponent {0} is odd; the integral ring needs an even exponent")]
    NotIntegral(u32),

    #[error("reflection axes of a matrix with odd exponent {0} are not scaled dyadic")]
    IrrationalAxes(u32),

    #[error("entry at index {0} is not odd")]
    EvenEntry(usize),

    #[error("dimension {0} is not supported by this algorithm")]
    UnsupportedDimension(usize),

    #[error("binary pattern is not {0}-paired")]
    NotPaired(&'static str),

    #[error("binary pattern matches no table entry")]
    NoMatch,

    #[error("word contains {0} occurrences of I⊗H; an even count is required")]
    OddIhCount(usize),

    #[error("generator {0} may not appear between a pair of I⊗H")]
    ForbiddenBetweenPair(String),

    #[error("the single-ancilla wrapper is not available for the integral ring")]
    WrapperUnavailable,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

impl SynthError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        SynthError::Parse {
            line,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for SynthError {
    fn from(err: std::io::Error) -> Self {
        SynthError::Io(err.to_string())
    }
}

impl From<serde_json::Error> for SynthError {
    fn from(err: serde_json::Error) -> Self {
        SynthError::Parse {
            line: err.line(),
            msg: err.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SynthError>;
