//! Enumeration budgets.
//!
//! The enumerative oracle paths build real objects, so each carries a hard
//! cap; the closed-form paths are uncapped. Setting `OUTERCOMM_ENUM_CAP`
//! to an integer overrides every cap at once (first read wins for the
//! lifetime of the process).

use std::sync::OnceLock;

/// Symbols touched while generating Lyndon words, roughly `n * d^n`.
pub const LYNDON_CAP: u64 = 1 << 24;
/// Commutator trees and pairs constructed during enumeration.
pub const PAIR_CAP: u64 = 1_000_000;
/// Largest group order for which elements are streamed.
pub const ELEMENT_CAP: u64 = 1 << 16;
/// Invariant factors materialized for a multiplier structure.
pub const TORSION_LEN_CAP: u64 = 1_000_000;
/// Bit length of a materialized multiplier order.
pub const SIZE_BIT_CAP: u64 = 1 << 26;

pub const ENV_VAR: &str = "OUTERCOMM_ENUM_CAP";

fn env_override() -> Option<u64> {
    static CACHE: OnceLock<Option<u64>> = OnceLock::new();
    *CACHE.get_or_init(|| {
        std::env::var(ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
    })
}

fn effective(default: u64) -> u64 {
    env_override().unwrap_or(default)
}

pub fn lyndon_cap() -> u64 {
    effective(LYNDON_CAP)
}

pub fn pair_cap() -> u64 {
    effective(PAIR_CAP)
}

pub fn element_cap() -> u64 {
    effective(ELEMENT_CAP)
}

pub fn torsion_len_cap() -> u64 {
    effective(TORSION_LEN_CAP)
}

pub fn size_bit_cap() -> u64 {
    effective(SIZE_BIT_CAP)
}
