use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: the inputs
/// were outside what the operation accepts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be at least {min}, got {got}")]
    AlphabetSize { min: usize, got: usize },

    #[error("radicand must be at least 1, got {0}")]
    Radicand(u64),

    #[error("symbol {symbol} out of range for alphabet of size {m}")]
    SymbolOutOfRange { symbol: usize, m: usize },

    #[error("image of symbol {0} is empty")]
    EmptyImage(usize),

    #[error("seed word is empty")]
    EmptySeed,

    #[error("seed count vector is zero")]
    ZeroSeed,

    #[error("length cap {cap} is smaller than the seed length {seed}")]
    LengthCap { cap: usize, seed: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("ratio index {index} out of range for {m} symbols")]
    RatioIndex { index: usize, m: usize },

    #[error("root degree must be at least 1")]
    RootDegree,

    #[error("rules line {line}: {msg}")]
    RulesSyntax { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
