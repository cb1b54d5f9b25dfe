use std::fmt;

/// Errors produced by the engines, the b-file bridge and the CLI.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain an operation supports.
    #[error("domain error: {0}")]
    Domain(String),

    /// A materialized set (or an exponent slot) outgrew its configured bound.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("coverage error: {0}")]
    Coverage(String),

    #[error("transport error: {0}")]
    Transport(String),

    #[error("verification failed: {0}")]
    Verification(Box<Mismatch>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A structured verification failure: which check, at which index, and what differed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub k: u32,
    pub n: u64,
    pub component: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} n={} {}: expected {}, got {}",
            self.k, self.n, self.component, self.expected, self.actual
        )
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn mismatch(
        k: u32,
        n: u64,
        component: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Error::Verification(Box::new(Mismatch {
            k,
            n,
            component: component.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
