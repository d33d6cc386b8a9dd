use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),

    #[error("digit {digit} out of range for an alphabet of size {n}")]
    DigitOutOfRange { digit: u32, n: u32 },

    #[error("alphabet mismatch: size {left} vs size {right}")]
    AlphabetMismatch { left: u32, right: u32 },

    #[error("cannot parse word {input:?}: {reason}")]
    WordParse { input: String, reason: String },

    #[error("code sequences may not contain the empty word")]
    EmptyCodeword,

    #[error("length distribution must contain at least one length")]
    EmptyLengths,

    #[error("length distribution entries must be at least 1")]
    ZeroLength,

    #[error("size limit exceeded: {required} exceeds the budget of {budget}")]
    SizeLimit { required: u128, budget: u64 },

    #[error("factorization search budget exceeded after {expansions} expansions")]
    SearchBudgetExceeded { expansions: u64 },

    #[error("search length bound must be at least 1")]
    ZeroSearchBound,

    #[error("index {index} out of bounds for a sequence of {len} words")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("entry {kappa} is not a proper prefix of entry {mu}")]
    NotProperPrefix { mu: usize, kappa: usize },

    #[error("expected a length distribution of {expected} entries, got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("length distribution {0} is not realizable (Kraft sum exceeds 1)")]
    Unrealizable(String),

    #[error("the two chosen values must be different, both were {0}")]
    EqualValues(u32),

    #[error("value {0} does not occur in the length distribution")]
    ValueNotInDistribution(u32),

    #[error("the length distribution is constant; a non-constant one is required")]
    ConstantDistribution,

    #[error("operation requires an alphabet of size {required}, got {got}")]
    AlphabetSizeRequired { required: u32, got: u32 },

    #[error("operation requires an alphabet larger than 2")]
    AlphabetTooSmallForFamily,

    #[error("no closed-form formula covers this (alphabet, length distribution) family")]
    UncoveredFamily,

    #[error("invalid family/alphabet pairing: {0}")]
    InvalidFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
