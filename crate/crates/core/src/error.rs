use thiserror::Error;

/// Malformed textual input: words, matrices and tuples.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty word; the identity is written `1`")]
    EmptyWord,
    #[error(
        "`{input}`: unexpected character {found:?} at position {position} (expected w, b or B)"
    )]
    BadLetter {
        input: String,
        position: usize,
        found: char,
    },
    #[error("`{input}`: not reduced at position {position} (consecutive letters must alternate between w and a power of b)")]
    NotReduced { input: String, position: usize },
    #[error("malformed matrix `{input}`: {reason}")]
    BadMatrix { input: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("determinant is {det}, expected 1")]
    NotUnimodular { det: String },
    #[error("entry {} (`{word}`) is not a conjugate of {of}", .index + 1)]
    NotAConjugate {
        /// Zero-based; displayed one-based.
        index: usize,
        word: String,
        of: &'static str,
    },
    #[error("position {position} out of range for a tuple of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("pair at position {position} is not a bad pair with a long member")]
    NotReducible { position: usize },
    #[error(
        "no Hurwitz move at position {position} decreases the excess of the bad pair ({left}, {right})"
    )]
    NoDecreasingMove {
        position: usize,
        left: String,
        right: String,
    },
    #[error("first factors are undefined for `{0}` (must not be 1, b or B)")]
    NoFirstFactor(String),
    #[error("exponent {0} is too large to expand into a word")]
    ExponentTooLarge(String),
    #[error("invariant broken: {0}")]
    Internal(String),
}
