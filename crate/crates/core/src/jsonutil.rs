use num_bigint::{BigInt, BigUint};
use serde_json::Number;

/// Exact JSON number from an unsigned bigint. serde_json is built with
/// `arbitrary_precision`, so any magnitude round-trips as a number token.
pub(crate) fn unsigned_number(n: &BigUint) -> Number {
    serde_json::from_str(&n.to_string()).expect("decimal digits parse as a JSON number")
}

pub(crate) fn signed_number(n: &BigInt) -> Number {
    serde_json::from_str(&n.to_string()).expect("decimal digits parse as a JSON number")
}
