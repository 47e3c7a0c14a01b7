use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad set expression at byte {position} ({atom:?}): {reason}")]
pub struct ParseSetError {
    pub position: usize,
    pub atom: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set {name} contains 0; restriction sets must hold positive integers only")]
    NonPositiveSet { name: &'static str },
    #[error("semi-length {n} exceeds the enumeration guard {max}")]
    EnumerationTooLarge { n: usize, max: usize },
    #[error("need at least {needed} terms for the smallest shape, got {available}")]
    InsufficientTerms { needed: usize, available: usize },
    #[error("state expansion exceeded the guard of {limit} states")]
    Divergence { limit: usize },
    #[error("{0} requires finite sets")]
    NotFinite(&'static str),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
