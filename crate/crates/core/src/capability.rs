//! Capability deciders for finitely generated abelian groups, one per
//! variety family, plus a brute-force oracle that re-derives the finite
//! verdicts from quotient multiplier sizes alone.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::arith::Count;
use crate::error::{Error, Result};
use crate::groups::{FgAbelianGroup, GroupElement};
use crate::multiplier::{baer_invariant_size, MultiplierSize, VarietyParams};

/// Ordinary capability: free rank at least 2, or a finite group with at
/// least two invariant factors whose top two factors agree.
pub fn is_capable(group: &FgAbelianGroup) -> bool {
    let k = group.rank();
    let t = group.torsion();
    *k >= Count::from(2u32) || (k.is_zero() && t.len() >= 2 && t[0] == t[1])
}

/// Capability with respect to nilpotency class `class`; for finitely
/// generated abelian groups this coincides with ordinary capability for
/// every class.
pub fn is_nilpotent_capable(group: &FgAbelianGroup, class: u32) -> bool {
    assert!(class >= 1, "nilpotency class is at least 1");
    is_capable(group)
}

/// Capability for the (c1, c2) outer commutator variety, closed form.
/// Finite groups need two agreeing leading factors; infinite groups need
/// free rank at least 2. The (1, 1) pair follows different rules and is
/// rejected here; use [`is_metabelian_capable`].
pub fn is_outer_capable(group: &FgAbelianGroup, params: &VarietyParams) -> Result<bool> {
    if params.is_metabelian() {
        return Err(Error::MetabelianRoute);
    }
    let t = group.torsion();
    if group.is_finite() {
        Ok(t.len() >= 2 && t[0] == t[1])
    } else {
        Ok(*group.rank() >= Count::from(2u32))
    }
}

/// Metabelian capability: free rank at least 3, or a finite group whose
/// top three invariant factors agree.
pub fn is_metabelian_capable(group: &FgAbelianGroup) -> bool {
    let k = group.rank();
    let t = group.torsion();
    *k >= Count::from(3u32) || (k.is_zero() && t.len() >= 3 && t[0] == t[1] && t[1] == t[2])
}

/// Oracle result: the verdict plus, when not capable, a non-identity
/// element whose cyclic quotient has a multiplier of the same size.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub capable: bool,
    pub witness: Option<GroupElement>,
}

/// Brute-force capability decision for finite groups: the group is
/// capable exactly when every non-identity element changes the multiplier
/// size when quotiented out. A surviving size witnesses an injective
/// multiplier map and so non-capability. The sweep order is fixed, so the
/// witness is deterministic. Note the trivial group comes out capable
/// vacuously, while the closed-form deciders, which assume a nontrivial
/// group, say no; agreement sweeps start at order 2.
pub fn oracle_verdict(group: &FgAbelianGroup, params: &VarietyParams) -> Result<OracleOutcome> {
    if !group.is_finite() {
        return Err(Error::InfiniteGroup("the capability oracle"));
    }
    let base = baer_invariant_size(group, params)?;
    let mut cache: HashMap<FgAbelianGroup, MultiplierSize> = HashMap::new();
    for x in group.elements()? {
        if x.is_identity() {
            continue;
        }
        let quotient = group.quotient_by_cyclic(&x)?;
        let size = match cache.get(&quotient) {
            Some(s) => s.clone(),
            None => {
                let s = baer_invariant_size(&quotient, params)?;
                cache.insert(quotient, s.clone());
                s
            }
        };
        if size == base {
            return Ok(OracleOutcome {
                capable: false,
                witness: Some(x),
            });
        }
    }
    Ok(OracleOutcome {
        capable: true,
        witness: None,
    })
}

pub fn oracle_capable(group: &FgAbelianGroup, params: &VarietyParams) -> Result<bool> {
    Ok(oracle_verdict(group, params)?.capable)
}

/// Checks that every capability decider gives the same verdict on this
/// group: the structural criterion, the ordinary decider, the nilpotent
/// deciders for a few classes, and the outer decider for each sampled
/// parameter pair (none of which may be (1, 1)).
pub fn deciders_agree(group: &FgAbelianGroup, sampled: &[VarietyParams]) -> Result<bool> {
    let k = group.rank();
    let t = group.torsion();
    let structural = *k >= Count::from(2u32) || (k.is_zero() && t.len() >= 2 && t[0] == t[1]);
    if is_capable(group) != structural {
        return Ok(false);
    }
    for class in [1u32, 2, 3, 5] {
        if is_nilpotent_capable(group, class) != structural {
            return Ok(false);
        }
    }
    for params in sampled {
        if is_outer_capable(group, params)? != structural {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which capability notion a verdict is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarietySelector {
    /// Ordinary (abelian-variety) capability.
    Baer,
    /// Nilpotent of class at most `c`.
    Nilpotent(u32),
    /// Outer commutator pair, never (1, 1).
    Outer(VarietyParams),
    /// The metabelian variety, the (1, 1) case.
    Metabelian,
}

impl VarietySelector {
    /// Outer selector; the (1, 1) pair is routed away explicitly so it
    /// cannot silently land on the wrong criterion.
    pub fn outer(params: VarietyParams) -> Result<Self> {
        if params.is_metabelian() {
            return Err(Error::MetabelianRoute);
        }
        Ok(VarietySelector::Outer(params))
    }

    pub fn decide(&self, group: &FgAbelianGroup) -> Result<bool> {
        match self {
            VarietySelector::Baer => Ok(is_capable(group)),
            VarietySelector::Nilpotent(c) => Ok(is_nilpotent_capable(group, *c)),
            VarietySelector::Outer(p) => is_outer_capable(group, p),
            VarietySelector::Metabelian => Ok(is_metabelian_capable(group)),
        }
    }

    /// The parameter pair the oracle should use for this selector, when
    /// the selector corresponds to one.
    pub fn oracle_params(&self) -> Option<VarietyParams> {
        match self {
            VarietySelector::Outer(p) => Some(*p),
            VarietySelector::Metabelian => Some(VarietyParams::new(1, 1).expect("(1,1) is valid")),
            VarietySelector::Baer | VarietySelector::Nilpotent(_) => None,
        }
    }
}

impl fmt::Display for VarietySelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySelector::Baer => write!(f, "baer"),
            VarietySelector::Nilpotent(c) => write!(f, "nc:{c}"),
            VarietySelector::Outer(p) => write!(f, "outer:{},{}", p.c1(), p.c2()),
            VarietySelector::Metabelian => write!(f, "s2"),
        }
    }
}

impl Serialize for VarietySelector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            VarietySelector::Baer => {
                let mut s = serializer.serialize_struct("VarietySelector", 1)?;
                s.serialize_field("kind", "baer")?;
                s.end()
            }
            VarietySelector::Nilpotent(c) => {
                let mut s = serializer.serialize_struct("VarietySelector", 2)?;
                s.serialize_field("kind", "nc")?;
                s.serialize_field("c", c)?;
                s.end()
            }
            VarietySelector::Outer(p) => {
                let mut s = serializer.serialize_struct("VarietySelector", 3)?;
                s.serialize_field("kind", "outer")?;
                s.serialize_field("c1", &p.c1())?;
                s.serialize_field("c2", &p.c2())?;
                s.end()
            }
            VarietySelector::Metabelian => {
                let mut s = serializer.serialize_struct("VarietySelector", 1)?;
                s.serialize_field("kind", "s2")?;
                s.end()
            }
        }
    }
}

/// The CLI's verdict object; serializes to the fixed JSON shape.
#[derive(Debug, Clone, DeriveSerialize)]
pub struct CapabilityVerdict {
    pub group: FgAbelianGroup,
    pub variety: VarietySelector,
    pub capable: bool,
    pub method: String,
    pub witness: Option<GroupElement>,
}
