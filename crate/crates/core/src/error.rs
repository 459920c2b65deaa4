use thiserror::Error;

use crate::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid shift: {0}")]
    InvalidShift(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("enumeration limit {limit} exceeds the declared bound {bound}")]
    BoundBreached { limit: usize, bound: usize },

    #[error("index {index} is beyond the end of the set (size {size})")]
    IndexBeyondSet { index: usize, size: usize },

    #[error("membership of {n} in the set for letter {letter} is unknown under the declared bound")]
    UnknownMembership { letter: Letter, n: usize },

    #[error("whether the set for letter {letter} is infinite is unknown under the declared bound")]
    InfinitudeUnknown { letter: Letter },

    #[error("operation requires the {expected} variant")]
    VariantMismatch { expected: &'static str },

    #[error("word {0} is not in the language")]
    WordNotInLanguage(String),

    #[error("word length {requested} exceeds the enumeration cap {cap}")]
    EnumerationCap { requested: usize, cap: usize },

    #[error("shift is not of finite type")]
    NotSft,

    #[error("shift is not known to be sofic")]
    NotSofic,

    #[error("graph has no essential part")]
    EmptyGraph,

    #[error("alphabet sizes differ ({left} vs {right})")]
    AlphabetSizeMismatch { left: usize, right: usize },

    #[error("invalid offsets: {0}")]
    InvalidOffsets(String),

    #[error("word of length {len} is too short for a window of length {window}")]
    WordTooShort { len: usize, window: usize },

    #[error("block map has no entry for window {0}")]
    MissingWindow(String),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by a declared bound hiding the answer, as opposed
    /// to malformed input or a negative verdict.
    pub fn is_undecidable(&self) -> bool {
        matches!(
            self,
            Error::UnknownMembership { .. } | Error::InfinitudeUnknown { .. } | Error::BoundBreached { .. }
        )
    }
}
