//! The outer-commutator multiplier of a finitely generated abelian group.
//!
//! For a group `Z^k + Z_{n_1} + ... + Z_{n_t}` in normal form and class
//! parameters (c1, c2) with c2 <= c1 <= 2*c2, the multiplier is again a
//! finitely generated abelian group: free of rank `b_k`, plus each `Z_{n_j}`
//! repeated `b_{k+j} - b_{k+j-1}` times, where `b_i` counts the generating
//! commutator pairs on `i` letters. The counts come straight from the Witt
//! formula, in two regimes: a product of two Witt numbers when c1 > c2,
//! and the pair count chi_2(chi_{c1+1}(i)) when c1 = c2.

use std::fmt;

use num_traits::{CheckedSub, One, Pow, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::arith::{witt, Count};
use crate::caps;
use crate::error::{Error, Result};
use crate::groups::FgAbelianGroup;
use crate::jsonutil;

/// Validated class pair (c1, c2) with 1 <= c2 <= c1 <= 2*c2.
///
/// Outside that range the structure formula is unproven, so construction
/// fails rather than extrapolate; every operation downstream can then
/// take parameters without revalidating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarietyParams {
    c1: u32,
    c2: u32,
}

impl VarietyParams {
    pub fn new(c1: u32, c2: u32) -> Result<Self> {
        if c1 >= 1 && c2 >= 1 && c2 <= c1 && c1 <= 2 * c2 {
            Ok(VarietyParams { c1, c2 })
        } else {
            Err(Error::UnsupportedVariety { c1, c2 })
        }
    }

    pub fn c1(&self) -> u32 {
        self.c1
    }

    pub fn c2(&self) -> u32 {
        self.c2
    }

    /// The (1, 1) pair, whose capability theory is the odd one out.
    pub fn is_metabelian(&self) -> bool {
        self.c1 == 1 && self.c2 == 1
    }
}

impl fmt::Display for VarietyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

impl Serialize for VarietyParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VarietyParams", 2)?;
        s.serialize_field("c1", &self.c1)?;
        s.serialize_field("c2", &self.c2)?;
        s.end()
    }
}

/// The exponent `b_i`: the number of generating commutator pairs on `i`
/// letters. Monotone in `i`, which is what makes the multiplier's torsion
/// multiplicities non-negative.
pub fn structure_exponent(params: &VarietyParams, letters: &Count) -> Count {
    let chi_outer = witt(params.c1 + 1, letters);
    if params.c1 > params.c2 {
        chi_outer * witt(params.c2 + 1, letters)
    } else {
        witt(2, &chi_outer)
    }
}

/// The exponents `b_k ..= b_{k+t}` for a group in normal form.
pub fn exponent_sequence(group: &FgAbelianGroup, params: &VarietyParams) -> Vec<Count> {
    let k = group.rank().clone();
    let t = group.torsion().len() as u64;
    (0..=t)
        .map(|j| structure_exponent(params, &(&k + Count::from(j))))
        .collect()
}

/// The multiplier of `group` with respect to the (c1, c2) outer commutator
/// classes, as a group in normal form.
pub fn baer_invariant(group: &FgAbelianGroup, params: &VarietyParams) -> Result<FgAbelianGroup> {
    let exponents = exponent_sequence(group, params);
    let rank = exponents[0].clone();
    let cap = caps::torsion_len_cap();
    let mut budget = cap;
    let mut torsion: Vec<Count> = Vec::new();
    for (j, n) in group.torsion().iter().enumerate() {
        let multiplicity = exponents[j + 1]
            .checked_sub(&exponents[j])
            .expect("structure exponents are monotone");
        let count = multiplicity
            .to_u64()
            .filter(|&m| m <= budget)
            .ok_or(Error::ResourceLimit {
                what: "multiplier torsion materialization",
                cap,
            })?;
        budget -= count;
        for _ in 0..count {
            torsion.push(n.clone());
        }
    }
    FgAbelianGroup::normalize(rank, &torsion)
}

/// Order of the multiplier without materializing the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplierSize {
    Finite(Count),
    Infinite,
}

impl fmt::Display for MultiplierSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplierSize::Finite(n) => write!(f, "{n}"),
            MultiplierSize::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for MultiplierSize {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MultiplierSize::Finite(n) => jsonutil::unsigned_number(n).serialize(serializer),
            MultiplierSize::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

/// Order of the multiplier: infinite as soon as `b_k > 0`, otherwise the
/// product of `n_j` to the power of its multiplicity.
pub fn baer_invariant_size(
    group: &FgAbelianGroup,
    params: &VarietyParams,
) -> Result<MultiplierSize> {
    let exponents = exponent_sequence(group, params);
    if !exponents[0].is_zero() {
        return Ok(MultiplierSize::Infinite);
    }
    let cap = caps::size_bit_cap();
    let mut bit_budget = cap;
    let mut size = Count::one();
    for (j, n) in group.torsion().iter().enumerate() {
        let multiplicity = exponents[j + 1]
            .checked_sub(&exponents[j])
            .expect("structure exponents are monotone");
        let m = multiplicity
            .to_u64()
            .filter(|&m| m.saturating_mul(n.bits()) <= bit_budget)
            .ok_or(Error::ResourceLimit {
                what: "multiplier size materialization",
                cap,
            })?;
        bit_budget -= m * n.bits();
        size *= Pow::pow(n, m);
    }
    Ok(MultiplierSize::Finite(size))
}

/// Everything the CLI reports for one multiplier computation; serializes
/// to the fixed JSON shape.
#[derive(Debug, Clone, DeriveSerialize)]
pub struct MultiplierReport {
    pub input: FgAbelianGroup,
    pub variety: VarietyParams,
    pub multiplier: FgAbelianGroup,
    pub size: MultiplierSize,
    #[serde(serialize_with = "serialize_counts")]
    pub exponents_b: Vec<Count>,
}

fn serialize_counts<S: Serializer>(
    counts: &[Count],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let numbers: Vec<serde_json::Number> = counts.iter().map(jsonutil::unsigned_number).collect();
    numbers.serialize(serializer)
}

pub fn report(group: &FgAbelianGroup, params: &VarietyParams) -> Result<MultiplierReport> {
    Ok(MultiplierReport {
        input: group.clone(),
        variety: *params,
        multiplier: baer_invariant(group, params)?,
        size: baer_invariant_size(group, params)?,
        exponents_b: exponent_sequence(group, params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite_groups_up_to;

    fn params(c1: u32, c2: u32) -> VarietyParams {
        VarietyParams::new(c1, c2).unwrap()
    }

    fn g(moduli: &[u64]) -> FgAbelianGroup {
        FgAbelianGroup::finite(moduli).unwrap()
    }

    fn c(v: u32) -> Count {
        Count::from(v)
    }

    #[test]
    fn params_validation() {
        assert!(VarietyParams::new(2, 1).is_ok());
        assert!(VarietyParams::new(1, 1).is_ok());
        assert!(VarietyParams::new(4, 2).is_ok());
        assert!(matches!(
            VarietyParams::new(3, 1),
            Err(Error::UnsupportedVariety { c1: 3, c2: 1 })
        ));
        assert!(VarietyParams::new(1, 2).is_err());
        assert!(VarietyParams::new(0, 0).is_err());
        assert!(VarietyParams::new(2, 0).is_err());
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(structure_exponent(&params(2, 1), &c(2)), c(2));
        assert_eq!(structure_exponent(&params(1, 1), &c(2)), c(0));
        assert_eq!(structure_exponent(&params(1, 1), &c(3)), c(3));
        for p in [params(2, 1), params(1, 1), params(4, 3)] {
            assert_eq!(structure_exponent(&p, &c(0)), c(0));
        }
    }

    #[test]
    fn exponents_follow_their_regime() {
        // each regime recomputed by hand from the Witt formula
        for i in 0..=6u32 {
            let p = params(3, 2);
            let manual = witt(4, &c(i)) * witt(3, &c(i));
            assert_eq!(structure_exponent(&p, &c(i)), manual);

            let q = params(2, 2);
            let manual = witt(2, &witt(3, &c(i)));
            assert_eq!(structure_exponent(&q, &c(i)), manual);
        }
    }

    #[test]
    fn exponents_are_monotone() {
        for p in crate::hall::params_up_to(8) {
            for i in 0..8u32 {
                assert!(
                    structure_exponent(&p, &c(i)) <= structure_exponent(&p, &c(i + 1)),
                    "params={p} i={i}"
                );
            }
        }
    }

    #[test]
    fn multiplier_of_two_torsion_factors() {
        // (Z_{n1} + Z_{n2}, (2,1)) -> Z_{n2}^2
        for (n1, n2) in [(4u64, 2u64), (6, 6), (12, 3)] {
            let out = baer_invariant(&g(&[n1, n2]), &params(2, 1)).unwrap();
            assert_eq!(out, g(&[n2, n2]), "n1={n1} n2={n2}");
        }
    }

    #[test]
    fn metabelian_multiplier_trivial_up_to_two_generators() {
        let p = params(1, 1);
        let mut small: Vec<FgAbelianGroup> = vec![
            FgAbelianGroup::trivial(),
            FgAbelianGroup::free(1),
            FgAbelianGroup::free(2),
            FgAbelianGroup::normalize(Count::one(), &[6u32.into()]).unwrap(),
        ];
        small.extend([g(&[5]), g(&[12, 4]), g(&[9, 9])]);
        for group in small {
            assert!(group.min_generators() <= c(2));
            assert!(baer_invariant(&group, &p).unwrap().is_trivial(), "{group}");
        }
    }

    #[test]
    fn free_rank_three_metabelian() {
        let out = baer_invariant(&FgAbelianGroup::free(3), &params(1, 1)).unwrap();
        assert_eq!(out, FgAbelianGroup::free(3));
    }

    #[test]
    fn trivial_group_has_trivial_multiplier() {
        for p in crate::hall::params_up_to(6) {
            assert!(baer_invariant(&FgAbelianGroup::trivial(), &p)
                .unwrap()
                .is_trivial());
        }
    }

    #[test]
    fn size_examples() {
        assert_eq!(
            baer_invariant_size(&g(&[2, 2]), &params(2, 1)).unwrap(),
            MultiplierSize::Finite(c(4))
        );
        for n in 2..=40u64 {
            for p in [params(2, 1), params(2, 2), params(1, 1)] {
                assert_eq!(
                    baer_invariant_size(&g(&[n]), &p).unwrap(),
                    MultiplierSize::Finite(Count::one()),
                    "n={n}"
                );
            }
        }
        assert_eq!(
            baer_invariant_size(&FgAbelianGroup::free(2), &params(2, 1)).unwrap(),
            MultiplierSize::Infinite
        );
    }

    #[test]
    fn size_matches_materialized_order() {
        for group in finite_groups_up_to(24) {
            for p in [params(2, 1), params(2, 2), params(1, 1)] {
                let size = baer_invariant_size(&group, &p).unwrap();
                let materialized = baer_invariant(&group, &p).unwrap();
                assert_eq!(
                    size,
                    MultiplierSize::Finite(materialized.order().unwrap()),
                    "group={group} params={p}"
                );
            }
        }
    }

    #[test]
    fn multiplicities_match_pair_enumeration() {
        // rank = pairs on k letters; each multiplicity = pairs added by its letter
        use crate::hall::{generating_pairs, pairs_added_by_letter};
        for p in crate::hall::params_up_to(5) {
            for k in 0..=2u32 {
                for t in 0..=(2 - k) {
                    let torsion: Vec<Count> =
                        (0..t).map(|i| Count::from(1u64 << (t - i))).collect();
                    let group = FgAbelianGroup::normalize(c(k), &torsion).unwrap();
                    let exponents = exponent_sequence(&group, &p);
                    let rank_pairs = generating_pairs(&p, k).unwrap().len();
                    assert_eq!(exponents[0], Count::from(rank_pairs as u64));
                    for j in 1..=t as usize {
                        let multiplicity = &exponents[j] - &exponents[j - 1];
                        assert_eq!(multiplicity, pairs_added_by_letter(&p, k, j as u32));
                    }
                }
            }
        }
    }

    #[test]
    fn nontrivial_whenever_noncyclic_outside_metabelian() {
        // away from (1, 1) the multiplier only vanishes on cyclic groups
        for p in crate::hall::params_up_to(6) {
            if p.is_metabelian() {
                continue;
            }
            for group in finite_groups_up_to(24) {
                if group.torsion().len() >= 2 {
                    assert!(
                        !baer_invariant(&group, &p).unwrap().is_trivial(),
                        "group={group} params={p}"
                    );
                }
            }
            let mixed = FgAbelianGroup::normalize(Count::one(), &[4u32.into()]).unwrap();
            assert!(!baer_invariant(&mixed, &p).unwrap().is_trivial());
            assert!(!baer_invariant(&FgAbelianGroup::free(2), &p)
                .unwrap()
                .is_trivial());
        }
    }

    #[test]
    fn quotient_sizes_divide() {
        let p = params(2, 1);
        for group in finite_groups_up_to(24) {
            let MultiplierSize::Finite(base) = baer_invariant_size(&group, &p).unwrap() else {
                panic!("finite group has finite multiplier");
            };
            for x in group.elements().unwrap() {
                let quotient = group.quotient_by_cyclic(&x).unwrap();
                let MultiplierSize::Finite(q) = baer_invariant_size(&quotient, &p).unwrap() else {
                    panic!("finite quotient has finite multiplier");
                };
                assert!((&base % &q).is_zero(), "group={group} x={x}");
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let finite = report(&g(&[4, 2]), &params(2, 1)).unwrap();
        let json = serde_json::to_string(&finite).unwrap();
        assert_eq!(
            json,
            r#"{"input":{"rank":0,"torsion":[4,2]},"variety":{"c1":2,"c2":1},"multiplier":{"rank":0,"torsion":[2,2]},"size":4,"exponents_b":[0,0,2]}"#
        );

        let infinite = report(&FgAbelianGroup::free(2), &params(2, 1)).unwrap();
        let json = serde_json::to_string(&infinite).unwrap();
        assert!(json.contains(r#""size":"infinite""#));
    }
}
