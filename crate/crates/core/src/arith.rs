//! Exact arithmetic kernel: the Mobius function, the Witt formula, and a
//! Lyndon-word counter that validates the formula by explicit generation.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};

use crate::caps;
use crate::error::{Error, Result};

/// Exact non-negative count. Everything in this crate that counts objects
/// uses arbitrary precision; nothing rounds or saturates.
pub type Count = BigUint;

/// Mobius function on the positive integers: 1 at m = 1, 0 when a squared
/// prime divides m, otherwise (-1)^s for m a product of s distinct primes.
pub fn moebius(m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::Domain("moebius is undefined at 0"));
    }
    let mut rest = m;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Number of basic commutators of weight `n` on `d` generators,
/// chi_n(d) = (1/n) * sum over m | n of mu(m) * d^(n/m).
///
/// The divisor sum is always exactly divisible by `n`; a remainder would
/// mean the arithmetic itself is broken, so that aborts instead of
/// rounding. `d` is a count so the formula can be iterated, as in
/// chi_2(chi_{c+1}(i)).
pub fn witt(n: u32, d: &Count) -> Count {
    assert!(n >= 1, "witt weight must be at least 1");
    let mut sum = BigInt::zero();
    for m in 1..=n {
        if !n.is_multiple_of(m) {
            continue;
        }
        let mu = moebius(u64::from(m)).expect("divisor is positive");
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(Pow::pow(d, n / m));
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    assert!(
        r.is_zero(),
        "witt divisor sum {sum} is not divisible by the weight {n}"
    );
    assert!(!q.is_negative(), "witt count came out negative: {q}");
    q.to_biguint().expect("checked non-negative")
}

/// Number of Lyndon words of length `n` over a `d`-letter alphabet,
/// counted by successor generation rather than by formula. This is the
/// independent oracle for [`witt`]; the two must agree everywhere.
pub fn count_lyndon(n: u32, d: u32) -> Result<Count> {
    count_lyndon_with_cap(n, d, caps::lyndon_cap())
}

/// As [`count_lyndon`] with an explicit work cap of about `n * d^n`
/// symbols.
pub fn count_lyndon_with_cap(n: u32, d: u32, cap: u64) -> Result<Count> {
    assert!(n >= 1, "word length must be at least 1");
    let work = Count::from(n) * Pow::pow(&Count::from(d), n);
    if work > Count::from(cap) {
        return Err(Error::ResourceLimit {
            what: "Lyndon word generation (n * d^n symbols)",
            cap,
        });
    }
    if d == 0 {
        return Ok(Count::zero());
    }
    let n = n as usize;
    let mut count = 0u64;
    // Duval-style successor walk over all Lyndon words of length <= n in
    // lexicographic order; only the words of length exactly n are counted.
    let mut w: Vec<u32> = vec![0];
    loop {
        if w.len() == n {
            count += 1;
        }
        let period = w.len();
        for i in period..n {
            w.push(w[i - period]);
        }
        while w.last() == Some(&(d - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(x) => *x += 1,
        }
    }
    Ok(Count::from(count))
}
