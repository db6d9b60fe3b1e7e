//! Finitely generated abelian groups in invariant-factor normal form,
//! with element streams, cyclic quotients through Smith normal form, and
//! the divisibility criterion for finite subgroups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::Count;
use crate::caps;
use crate::error::{Error, Result};
use crate::jsonutil;

mod matrix;

pub use matrix::{smith_normal_form, IntegerMatrix, SnfOutcome};

/// `Z^k + Z_{n_1} + ... + Z_{n_t}` with every factor at least 2 and
/// `n_{i+1} | n_i`. Values of this type are always in that normal form;
/// the constructors canonicalize. The rank is kept exact because
/// multiplier structures, whose ranks grow fast, come back as this same
/// type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: Count,
    torsion: Vec<Count>,
}

impl FgAbelianGroup {
    /// Canonicalizes `Z^rank + sum of Z_m` over the given moduli: trivial
    /// factors are dropped and the divisibility chain is enforced, so two
    /// isomorphic inputs construct equal values. Idempotent on inputs
    /// already in normal form. Moduli must be positive.
    pub fn normalize(rank: Count, moduli: &[Count]) -> Result<Self> {
        if moduli.iter().any(Zero::is_zero) {
            return Err(Error::InvalidGroup(
                "cyclic factor Z_0 is not allowed".into(),
            ));
        }
        let one = Count::one();
        let already_normal =
            moduli.iter().all(|m| *m > one) && moduli.windows(2).all(|w| (&w[0] % &w[1]).is_zero());
        let torsion = if already_normal {
            moduli.to_vec()
        } else {
            let mut chain: Vec<Count> = Vec::new();
            for m in moduli {
                let mut carry = m.clone();
                for entry in chain.iter_mut() {
                    if (&carry % &*entry).is_zero() {
                        // carry is a multiple, just swap the bigger one in
                        std::mem::swap(entry, &mut carry);
                        continue;
                    }
                    let g = entry.gcd(&carry);
                    let l = &*entry / &g * &carry;
                    *entry = l;
                    carry = g;
                }
                if carry > one {
                    chain.push(carry);
                }
            }
            chain
        };
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            rank: Count::zero(),
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: u64) -> Self {
        FgAbelianGroup {
            rank: Count::from(rank),
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::finite(&[n])
    }

    /// Finite group from small moduli, normalized.
    pub fn finite(moduli: &[u64]) -> Result<Self> {
        let moduli: Vec<Count> = moduli.iter().map(|&m| Count::from(m)).collect();
        Self::normalize(Count::zero(), &moduli)
    }

    /// The torsion-free rank, often written r_0. Additive over quotients:
    /// quotienting by a cyclic subgroup drops it by one exactly when the
    /// generator has infinite order.
    pub fn torsion_free_rank(&self) -> &Count {
        &self.rank
    }

    pub fn rank(&self) -> &Count {
        &self.rank
    }

    pub fn torsion(&self) -> &[Count] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank.is_zero() && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank.is_zero()
    }

    /// Minimal number of generators, `k + t` in normal form.
    pub fn min_generators(&self) -> Count {
        &self.rank + Count::from(self.torsion.len() as u64)
    }

    /// Group order; `None` when infinite.
    pub fn order(&self) -> Option<Count> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    fn rank_as_usize(&self) -> Result<usize> {
        self.rank
            .to_usize()
            .ok_or_else(|| Error::InvalidGroup("rank too large to build elements".into()))
    }

    /// Element from raw coordinates; torsion coordinates are reduced
    /// modulo their factors.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement> {
        if free.len() != self.rank_as_usize()? || torsion.len() != self.torsion.len() {
            return Err(Error::InvalidElement);
        }
        let reduced = torsion
            .into_iter()
            .zip(&self.torsion)
            .map(|(c, n)| c.mod_floor(&BigInt::from(n.clone())).magnitude().clone())
            .collect();
        Ok(GroupElement {
            parent: self.clone(),
            free,
            torsion: reduced,
        })
    }

    pub fn identity(&self) -> Result<GroupElement> {
        let k = self.rank_as_usize()?;
        Ok(GroupElement {
            parent: self.clone(),
            free: vec![BigInt::zero(); k],
            torsion: vec![Count::zero(); self.torsion.len()],
        })
    }

    /// Streams every element exactly once, identity first. Finite groups
    /// only, and only up to the element cap.
    pub fn elements(&self) -> Result<Elements> {
        self.elements_with_cap(caps::element_cap())
    }

    pub fn elements_with_cap(&self, cap: u64) -> Result<Elements> {
        let order = self
            .order()
            .ok_or(Error::InfiniteGroup("element enumeration"))?;
        if order > Count::from(cap) {
            return Err(Error::ResourceLimit {
                what: "group element enumeration",
                cap,
            });
        }
        let radices: Vec<u64> = self
            .torsion
            .iter()
            .map(|n| n.to_u64().expect("factors fit u64 under the cap"))
            .collect();
        Ok(Elements {
            group: self.clone(),
            counters: vec![0; radices.len()],
            radices,
            done: false,
        })
    }

    /// Quotient by the cyclic subgroup generated by `x`, computed by
    /// appending the row of x's coordinates to the relation matrix of the
    /// group and reading the Smith normal form back off.
    pub fn quotient_by_cyclic(&self, x: &GroupElement) -> Result<FgAbelianGroup> {
        if x.parent != *self {
            return Err(Error::InvalidElement);
        }
        let k = x.free.len();
        let t = self.torsion.len();
        let cols = k + t;
        let mut m = IntegerMatrix::zeros(t + 1, cols);
        for (i, n) in self.torsion.iter().enumerate() {
            m[(i, k + i)] = BigInt::from(n.clone());
        }
        for (j, v) in x.free.iter().enumerate() {
            m[(t, j)] = v.clone();
        }
        for (j, v) in x.torsion.iter().enumerate() {
            m[(t, k + j)] = BigInt::from(v.clone());
        }
        let snf = smith_normal_form(&m);
        let quotient_rank = Count::from((cols - snf.rank) as u64);
        let mut torsion: Vec<Count> = snf
            .elementary_divisors
            .into_iter()
            .filter(|d| *d > Count::one())
            .collect();
        torsion.reverse(); // SNF ascends, normal form descends
        FgAbelianGroup::normalize(quotient_rank, &torsion)
    }

    /// Finite subgroup criterion: with the shorter chain padded by 1s on
    /// the right, `self` occurs as a subgroup of `g` exactly when every
    /// aligned factor of `self` divides the factor of `g` above it.
    pub fn embeds_in(&self, g: &FgAbelianGroup) -> Result<bool> {
        if !self.is_finite() || !g.is_finite() {
            return Err(Error::InfiniteGroup("the subgroup criterion"));
        }
        if self.torsion.len() > g.torsion.len() {
            return Ok(false);
        }
        Ok(self
            .torsion
            .iter()
            .zip(&g.torsion)
            .all(|(m, n)| (n % m).is_zero()))
    }
}

/// Group literals: `Z^<k>` (or bare `Z`) for free factors and `Z<n>` or
/// `Z_<n>` for cyclic factors, joined by `x` or `+`, whitespace anywhere.
/// The parsed group is normalized.
impl std::str::FromStr for FgAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut rank = Count::zero();
        let mut moduli: Vec<Count> = Vec::new();
        let mut expect_factor = true;
        while pos < bytes.len() {
            let b = bytes[pos];
            if b.is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            if !expect_factor {
                if b == b'x' || b == b'+' {
                    pos += 1;
                    expect_factor = true;
                    continue;
                }
                return Err(Error::ParseGroup {
                    pos,
                    msg: format!("expected 'x' or '+' between factors, found {:?}", b as char),
                });
            }
            if b != b'Z' {
                return Err(Error::ParseGroup {
                    pos,
                    msg: format!("expected a factor starting with 'Z', found {:?}", b as char),
                });
            }
            pos += 1;
            match bytes.get(pos) {
                Some(b'^') => {
                    pos += 1;
                    let (value, next) = parse_digits(bytes, pos)?;
                    rank += value;
                    pos = next;
                }
                Some(b'_') => {
                    pos += 1;
                    let (value, next) = parse_digits(bytes, pos)?;
                    push_modulus(&mut moduli, value, pos)?;
                    pos = next;
                }
                Some(c) if c.is_ascii_digit() => {
                    let (value, next) = parse_digits(bytes, pos)?;
                    push_modulus(&mut moduli, value, pos)?;
                    pos = next;
                }
                _ => {
                    // bare Z is one free factor
                    rank += Count::one();
                }
            }
            expect_factor = false;
        }
        if expect_factor {
            return Err(Error::ParseGroup {
                pos,
                msg: "empty group literal or trailing separator".into(),
            });
        }
        FgAbelianGroup::normalize(rank, &moduli)
    }
}

fn parse_digits(bytes: &[u8], start: usize) -> Result<(Count, usize)> {
    let mut end = start;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == start {
        return Err(Error::ParseGroup {
            pos: start,
            msg: "expected digits".into(),
        });
    }
    let text = std::str::from_utf8(&bytes[start..end]).expect("digits are ascii");
    let value = text.parse::<Count>().expect("digits parse as a count");
    Ok((value, end))
}

fn push_modulus(moduli: &mut Vec<Count>, value: Count, pos: usize) -> Result<()> {
    if value.is_zero() {
        return Err(Error::ParseGroup {
            pos,
            msg: "cyclic factor Z0 is not a group".into(),
        });
    }
    moduli.push(value);
    Ok(())
}

/// Canonical literal; parsing the rendering gives the group back.
impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "Z^0");
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.rank.is_zero() {
            parts.push(format!("Z^{}", self.rank));
        }
        for n in &self.torsion {
            parts.push(format!("Z{n}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FgAbelianGroup", 2)?;
        s.serialize_field("rank", &jsonutil::unsigned_number(&self.rank))?;
        let torsion: Vec<serde_json::Number> =
            self.torsion.iter().map(jsonutil::unsigned_number).collect();
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

/// Element of an [`FgAbelianGroup`]: integer coordinates on the free part
/// and reduced residues on the torsion part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    parent: FgAbelianGroup,
    free: Vec<BigInt>,
    torsion: Vec<Count>,
}

impl GroupElement {
    pub fn parent(&self) -> &FgAbelianGroup {
        &self.parent
    }

    pub fn free_coords(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_coords(&self) -> &[Count] {
        &self.torsion
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    /// Element order; `None` when infinite. On the torsion part this is the
    /// least common multiple of n_i / gcd(n_i, coordinate).
    pub fn order(&self) -> Option<Count> {
        if self.free.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut order = Count::one();
        for (c, n) in self.torsion.iter().zip(&self.parent.torsion) {
            let g = c.gcd(n);
            order = order.lcm(&(n / g));
        }
        Some(order)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.parent != other.parent {
            return Err(Error::InvalidElement);
        }
        let free = self
            .free
            .iter()
            .zip(&other.free)
            .map(|(a, b)| a + b)
            .collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&self.parent.torsion)
            .map(|((a, b), n)| (a + b) % n)
            .collect();
        Ok(GroupElement {
            parent: self.parent.clone(),
            free,
            torsion,
        })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.free.iter().map(|c| c.to_string()).collect();
        parts.extend(self.torsion.iter().map(|c| c.to_string()));
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GroupElement", 2)?;
        let free: Vec<serde_json::Number> = self.free.iter().map(jsonutil::signed_number).collect();
        let torsion: Vec<serde_json::Number> =
            self.torsion.iter().map(jsonutil::unsigned_number).collect();
        s.serialize_field("free", &free)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

/// Element stream over a finite group, identity first, rightmost
/// coordinate fastest. Single consumer; make one per traversal.
pub struct Elements {
    group: FgAbelianGroup,
    radices: Vec<u64>,
    counters: Vec<u64>,
    done: bool,
}

impl Iterator for Elements {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        if self.done {
            return None;
        }
        let element = GroupElement {
            parent: self.group.clone(),
            free: Vec::new(),
            torsion: self.counters.iter().map(|&c| Count::from(c)).collect(),
        };
        let mut i = self.counters.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counters[i] += 1;
            if self.counters[i] < self.radices[i] {
                break;
            }
            self.counters[i] = 0;
        }
        Some(element)
    }
}

/// Every group in normal form with order at most `max_order`, the trivial
/// group included, ordered by order then chain.
pub fn finite_groups_up_to(max_order: u64) -> Vec<FgAbelianGroup> {
    let mut chains: Vec<Vec<u64>> = vec![Vec::new()];
    let mut frontier: Vec<(Vec<u64>, u64)> = Vec::new();
    for first in 2..=max_order {
        frontier.push((vec![first], first));
    }
    while let Some((chain, order)) = frontier.pop() {
        let last = *chain.last().expect("frontier chains are non-empty");
        for next in 2..=last {
            if last % next != 0 {
                continue;
            }
            if let Some(extended_order) = order.checked_mul(next) {
                if extended_order <= max_order {
                    let mut extended = chain.clone();
                    extended.push(next);
                    frontier.push((extended, extended_order));
                }
            }
        }
        chains.push(chain);
    }
    chains.sort_by_key(|c| (c.iter().product::<u64>(), c.clone()));
    chains
        .into_iter()
        .map(|c| FgAbelianGroup::finite(&c).expect("generated chains are valid"))
        .collect()
}
