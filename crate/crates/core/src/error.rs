//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or input violated an operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed or inconsistent data (bad records, misaligned files).
    #[error("data error: {0}")]
    Data(String),

    /// A model or provider backend failed.
    #[error("backend error: {0}")]
    Backend(String),

    /// A backend failure worth retrying (connection-level).
    #[error("transient backend error: {0}")]
    BackendTransient(String),

    /// A failure while rewriting one sentence of one document.
    #[error("document {document_id}, sentence {sentence_index}: {source}")]
    Rewrite {
        document_id: String,
        sentence_index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn backend(msg: impl Into<String>) -> Self {
        Error::Backend(msg.into())
    }

    /// Wraps an error with the document/sentence it occurred in.
    pub fn in_sentence(self, document_id: &str, sentence_index: usize) -> Self {
        Error::Rewrite {
            document_id: document_id.to_string(),
            sentence_index,
            source: Box::new(self),
        }
    }

    /// True for errors a runner may retry (backend connection failures).
    pub fn is_transient(&self) -> bool {
        match self {
            Error::BackendTransient(_) => true,
            Error::Rewrite { source, .. } => source.is_transient(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
