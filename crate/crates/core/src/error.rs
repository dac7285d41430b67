use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("graph has no edges")]
    Edgeless,

    #[error("size limit exceeded for {what}: {actual} > {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("certificate does not match graph: {0}")]
    CertificateMismatch(String),

    #[error("separation oracle returned a row that is not violated: {0}")]
    OracleContract(String),

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
