use alloc::string::String;

/// Errors produced by the core library.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain size mismatch: expected {expected}, got {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("images do not form a bijection of 0..{0}")]
    NotABijection(usize),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{what} limit exceeded: {value} > {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("subset operations support at most 64 points, domain has {0}")]
    DomainTooLarge(usize),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("the identity has no prime divisor of its order")]
    IdentityElement,
    #[error("the group contains the alternating group on its domain")]
    ContainsAlternating,
    #[error("the subset must be non-empty")]
    EmptySubset,
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("overgroup {0} does not contain the group")]
    NotAnOvergroup(usize),
    #[error("the group is trivial")]
    TrivialGroup,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not a perfect square")]
    NotPerfectSquare(u64),
    #[error("unknown inequality {0:?}")]
    UnknownInequality(String),
    #[error("missing external constant {0:?}")]
    MissingConstant(String),
    #[error("comparison undecided at {precision} bits")]
    Undecided { precision: u32 },
    #[error("catalog entry {name}@{degree} failed verification: {reason}")]
    CatalogVerification {
        name: String,
        degree: usize,
        reason: String,
    },
    #[error("catalog entry {0}@{1} not found")]
    NotFound(String, usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
