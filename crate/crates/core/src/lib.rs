//! Outer commutator multipliers and varietal capability of finitely
//! generated abelian groups.
//!
//! The closed-form side computes, for class parameters (c1, c2) with
//! c2 <= c1 <= 2*c2, the multiplier of any group `Z^k + Z_{n_1} + ... +
//! Z_{n_t}` as another group in invariant-factor form, and decides
//! capability for the corresponding varieties. The enumerative side
//! rebuilds the same numbers from scratch: Lyndon words for the Witt
//! counts, explicit basic-commutator pairs for the structure exponents,
//! and quotient multiplier sizes for the capability verdicts. The
//! [`selfcheck`] module sweeps one side against the other.

pub mod arith;
pub mod capability;
pub mod caps;
pub mod error;
pub mod groups;
pub mod hall;
pub mod multiplier;
pub mod selfcheck;

mod jsonutil;

pub use arith::Count;
pub use error::{Error, Result};
pub use groups::{FgAbelianGroup, GroupElement};
pub use multiplier::{MultiplierSize, VarietyParams};
