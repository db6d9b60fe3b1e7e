use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes: variety
/// problems exit 3, resource limits exit 4, everything else is a usage
/// error and exits 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(&'static str),

    #[error("{what} would exceed the enumeration cap of {cap}")]
    ResourceLimit { what: &'static str, cap: u64 },

    #[error(
        "unsupported variety parameters (c1, c2) = ({c1}, {c2}): require 1 <= c2 <= c1 <= 2*c2"
    )]
    UnsupportedVariety { c1: u32, c2: u32 },

    #[error("parameters (1, 1) select the metabelian variety; use the metabelian decider")]
    MetabelianRoute,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element does not belong to the given group")]
    InvalidElement,

    #[error("{0} is only defined for finite groups")]
    InfiniteGroup(&'static str),

    #[error("group literal syntax error at byte {pos}: {msg}")]
    ParseGroup { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
