use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alternative labels must be positive integers, got {0}")]
    InvalidAlternative(u32),

    #[error("alternative {0} appears more than once in an order")]
    RepeatedAlternative(u32),

    #[error("a linear order must rank at least one alternative")]
    EmptyOrder,

    #[error("a domain must contain at least one order")]
    EmptyDomain,

    #[error("order {order} is not a permutation of the domain alternatives {{{alternatives}}}")]
    MismatchedAlternatives { order: String, alternatives: String },

    #[error("alternatives {{{subset}}} are not all present in {{{available}}}")]
    NotASubset { subset: String, available: String },

    #[error("restriction to the empty set of alternatives")]
    EmptySubset,

    #[error("mapping is not a bijection on the domain alternatives: {0}")]
    NotABijection(String),

    #[error("{what} is limited to {limit}, got {got}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("{operation} needs at least {needed} alternatives, got {got}")]
    TooFewAlternatives {
        operation: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("domain is not Condorcet")]
    NotCondorcet,

    #[error("invalid never-condition: {0}")]
    InvalidCondition(String),

    #[error("incompatible factors: {0}")]
    IncompatibleFactors(String),

    #[error("alternatives passed to {0} must be distinct members of the domain")]
    NotDistinct(&'static str),

    #[error("axis {axis} is not a permutation of the domain alternatives")]
    AxisMismatch { axis: String },

    #[error("unknown catalog entry '{0}'")]
    UnknownCatalogEntry(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
