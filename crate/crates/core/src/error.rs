use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the operation's domain, e.g. `gcd(0, 0)` or `n < 2`.
    #[error("{0}")]
    Domain(String),

    #[error("ring mismatch: ({left_n}, r={left_r}) vs ({right_n}, r={right_r})")]
    RingMismatch {
        left_n: String,
        left_r: usize,
        right_n: String,
        right_r: usize,
    },

    #[error("cannot parse {input:?} as a natural number: {reason}")]
    Parse { input: String, reason: String },

    #[error("line {line}: {reason}")]
    BatchLine { line: usize, reason: String },

    #[error("pair {index}: {source}")]
    BatchPair {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// The progress callback of a verbose run returned an error.
    #[error("aborted by progress sink: {0}")]
    Aborted(#[source] Box<dyn std::error::Error + Send + Sync>),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
