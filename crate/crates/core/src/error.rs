use thiserror::Error;

/// Errors shared across the series, partition, statistics and identity layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factor part must be at least 1")]
    ZeroFactorPart,

    #[error("k must be at least 1")]
    ZeroK,

    #[error("coefficient index {index} exceeds series truncation {truncation}")]
    TruncationExceeded { index: i64, truncation: u64 },

    #[error("spec `{label}` only covers parts up to {built_for}; expanding to {requested} would drop parts")]
    ExpansionBeyondSpec {
        label: String,
        built_for: u64,
        requested: u64,
    },

    #[error("enumeration at n = {n} exceeds the oracle cap of {cap}; raise the cap to force it")]
    CapExceeded { n: u64, cap: u64 },

    #[error("statistic {kind} is not defined for spec `{label}`; valid specs: {valid}")]
    InvalidPairing {
        kind: String,
        label: String,
        valid: String,
    },

    #[error("repetition threshold for G-bar must be 1 or 3, got {r}")]
    UnsupportedGBar { r: u64 },

    #[error("cannot parse spec selector `{input}`: {reason}")]
    BadSelector { input: String, reason: String },

    #[error("series `{label}` carries no spec provenance; build it from a FactorSpec")]
    MissingProvenance { label: String },

    #[error("empty verification range: max_n = {max_n} admits no checks for {theorem}")]
    EmptyRange { theorem: String, max_n: u64 },

    #[error("no mutation registered for theorem {theorem}")]
    NoMutationRegistered { theorem: String },

    #[error("unknown theorem `{input}`; known: {known}")]
    UnknownTheorem { input: String, known: String },

    #[error("unknown statistic `{input}`; known: {known}")]
    UnknownStat { input: String, known: String },
}

pub type Result<T> = std::result::Result<T, Error>;
