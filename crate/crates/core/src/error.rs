use thiserror::Error;

use crate::geometry::GpStatus;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("the three points defining the circle are collinear")]
    DegenerateCircle,

    #[error("point set is not in general position: {0}")]
    NotGeneralPosition(GpStatus),

    #[error("point set has {0} points; an odd count of at least 3 is required")]
    EvenCardinality(usize),

    #[error("point set has {0} points; at least 3 are required")]
    TooFewPoints(usize),

    #[error("signature ({a},{b}) does not satisfy a + b = 2n - 2 for n = {n}")]
    BadSignature { a: usize, b: usize, n: usize },

    #[error("index {index} is out of range for a set of {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("indices must be distinct, got {0} twice")]
    RepeatedIndex(usize),

    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gave up after {attempts} attempts: {what}")]
    ExhaustedRetries { what: String, attempts: usize },

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("the path crosses two boundaries at once near t in [{lo}, {hi}]: {first} and {second}")]
    SimultaneousCrossing {
        lo: String,
        hi: String,
        first: String,
        second: String,
    },

    #[error("the path touches {boundary} tangentially at t = {t}")]
    TangentContact { boundary: String, t: String },

    #[error("path endpoint t = {t} lies on a boundary: {status}")]
    DegenerateEndpoint { t: u8, status: GpStatus },

    #[error("invalid motion path: {0}")]
    InvalidPath(String),

    #[error("exchange law violated: {0}")]
    LawViolation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
