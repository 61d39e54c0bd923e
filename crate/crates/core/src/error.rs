use alloc::string::String;

/// Errors raised by the core library.
///
/// `Parse` covers malformed user input; `Internal` marks a broken algebraic
/// invariant (a non-unit face ratio, `d∘d != 0`, a non-homogeneous entry) and
/// always indicates a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("ring element `{0}` is not a unit monomial")]
    NotAUnit(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("position {position} out of range for a word of length {len}")]
    OutOfRange { position: usize, len: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::Internal(message.into())
    }

    /// True for errors caused by malformed input rather than a library bug.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::NotAUnit(_) | Error::LengthMismatch { .. } | Error::OutOfRange { .. })
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
