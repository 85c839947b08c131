use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants fall into three groups that the command-line tool maps to exit
/// codes: violated preconditions, certification failures and parse/I-O
/// problems. See [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{m} exceeds the bound 2^20")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("modulus must be monic of degree {degree} with coefficients below {p}")]
    MalformedModulus { degree: u32, p: u32 },
    #[error("modulus {coeffs:?} is reducible over GF({p})")]
    ReducibleModulus { coeffs: Vec<u32>, p: u32 },
    #[error("element index {index} is out of range for GF({q})")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} is not a square")]
    NotSquare(u32),
    #[error("{r} does not divide the extension degree {m}")]
    NotADivisor { r: u32, m: u32 },
    #[error("the zero polynomial has no roots to report")]
    ZeroPolynomial,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("generator matrix is rank deficient: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("invalid GRS data: {0}")]
    InvalidGrs(String),
    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: String, detail: String },
    #[error("hypothesis `{name}` fails: {detail}")]
    Hypothesis { name: String, detail: String },
    #[error("(a*b*h')(alpha_{position}) = {value} is not a nonzero square (alpha_{position} = {point})")]
    SquarenessViolated {
        position: usize,
        point: u32,
        value: u32,
    },
    #[error("construction yields dimension k = {k} for length {n}; only k > 1 is supported")]
    DegenerateDimension { n: usize, k: usize },
    #[error("no free field element outside a forbidden set of size {0}")]
    NoFreePoint(usize),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Coarse classification used for exit codes and error records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Certification,
    Input,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Certification(_) => ErrorKind::Certification,
            Error::Parse(_) | Error::Io(_) => ErrorKind::Input,
            _ => ErrorKind::Precondition,
        }
    }

    /// True for arithmetic side-condition failures: the parameter tuple is
    /// outside every construction's domain rather than a failed instance.
    pub fn is_inadmissible(&self) -> bool {
        matches!(
            self,
            Error::Precondition { .. } | Error::DegenerateDimension { .. }
        )
    }

    pub(crate) fn precondition(name: &str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            name: name.to_string(),
            detail: detail.into(),
        }
    }

    /// A hypothesis that should hold for the parameters but
    /// that failed when checked numerically.
    pub(crate) fn hypothesis(name: &str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            name: name.to_string(),
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
