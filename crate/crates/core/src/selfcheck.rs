//! Bundled verification sweeps. Every closed-form path in the crate has an
//! enumerative counterpart; these run the comparisons at desk scale and
//! report mismatches instead of panicking, so the CLI can surface them.

use crate::arith::{count_lyndon, witt, Count};
use crate::capability::{is_metabelian_capable, is_outer_capable, oracle_capable};
use crate::error::Result;
use crate::groups::finite_groups_up_to;
use crate::hall::{enumerate_basic, pairs_added_by_letter, pairs_using_letter, params_up_to};
use crate::multiplier::VarietyParams;

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Witt formula against Lyndon word generation, n <= 10, d <= 4.
pub fn witt_vs_lyndon() -> CheckReport {
    let mut report = CheckReport {
        name: "witt-vs-lyndon",
        checks: 0,
        failures: Vec::new(),
    };
    for n in 1..=10u32 {
        for d in 0..=4u32 {
            report.checks += 1;
            let formula = witt(n, &Count::from(d));
            match count_lyndon(n, d) {
                Ok(enumerated) if enumerated == formula => {}
                Ok(enumerated) => report.failures.push(format!(
                    "witt({n}, {d}) = {formula} but enumeration found {enumerated}"
                )),
                Err(e) => report.failures.push(format!("count_lyndon({n}, {d}): {e}")),
            }
        }
    }
    report
}

/// Basic commutator enumeration lengths against the Witt counts, plus
/// strict ordering of the output, d <= 3, w <= 6.
pub fn hall_counts() -> CheckReport {
    let mut report = CheckReport {
        name: "hall-counts",
        checks: 0,
        failures: Vec::new(),
    };
    for d in 0..=3u32 {
        for w in 1..=6u32 {
            report.checks += 1;
            match enumerate_basic(d, w) {
                Ok(list) => {
                    let expected = witt(w, &Count::from(d));
                    if Count::from(list.len() as u64) != expected {
                        report.failures.push(format!(
                            "enumerate_basic({d}, {w}) has length {} but witt says {expected}",
                            list.len()
                        ));
                    }
                    if !list.windows(2).all(|p| p[0] < p[1]) {
                        report
                            .failures
                            .push(format!("enumerate_basic({d}, {w}) is not strictly sorted"));
                    }
                }
                Err(e) => report
                    .failures
                    .push(format!("enumerate_basic({d}, {w}): {e}")),
            }
        }
    }
    report
}

/// Closed-form letter counts against enumeration on the matching
/// alphabet, the disjointness of the occurrence split, and telescoping of
/// the added counts, for c1 + c2 <= 5 and k + j <= 4.
pub fn layer_counts() -> CheckReport {
    let mut report = CheckReport {
        name: "closed-form-vs-enumeration",
        checks: 0,
        failures: Vec::new(),
    };
    for params in params_up_to(5) {
        for k in 0..=3u32 {
            for j in 1..=4u32 {
                if k + j > 4 {
                    continue;
                }
                report.checks += 1;
                let closed = pairs_added_by_letter(&params, k, j);
                match pairs_using_letter(&params, k, j, j) {
                    Ok(usage) => {
                        if closed != usage.total {
                            report.failures.push(format!(
                                "params {params} k={k} j={j}: closed {closed} != enumerated {}",
                                usage.total
                            ));
                        }
                        let sum = &usage.left_only + &usage.right_only + &usage.both;
                        if sum != usage.total {
                            report.failures.push(format!(
                                "params {params} k={k} j={j}: occurrence split does not sum"
                            ));
                        }
                    }
                    Err(e) => report
                        .failures
                        .push(format!("pairs_using_letter({params}, {k}, {j}): {e}")),
                }
            }
        }
    }
    report
}

/// The six parameter pairs the acceptance sweeps exercise.
pub fn standard_params() -> Vec<VarietyParams> {
    [(1, 1), (2, 1), (2, 2), (3, 2), (4, 2), (4, 3)]
        .into_iter()
        .map(|(c1, c2)| VarietyParams::new(c1, c2).expect("standard pairs are valid"))
        .collect()
}

/// Oracle verdicts against the closed-form deciders over every nontrivial
/// group of order at most `max_order`.
pub fn oracle_vs_deciders(max_order: u64, params: &[VarietyParams]) -> Result<CheckReport> {
    let cap = crate::caps::element_cap();
    if max_order > cap {
        return Err(crate::error::Error::ResourceLimit {
            what: "capability sweep over all groups up to the order",
            cap,
        });
    }
    let mut report = CheckReport {
        name: "decider-vs-oracle",
        checks: 0,
        failures: Vec::new(),
    };
    for group in finite_groups_up_to(max_order) {
        if group.is_trivial() {
            continue;
        }
        for p in params {
            report.checks += 1;
            let closed = if p.is_metabelian() {
                is_metabelian_capable(&group)
            } else {
                is_outer_capable(&group, p)?
            };
            let oracle = oracle_capable(&group, p)?;
            if oracle != closed {
                report.failures.push(format!(
                    "group {group} params {p}: oracle says {oracle}, decider says {closed}"
                ));
            }
        }
    }
    Ok(report)
}

/// The full invariant suite at selfcheck scale.
pub fn run_all() -> Result<Vec<CheckReport>> {
    Ok(vec![
        witt_vs_lyndon(),
        hall_counts(),
        layer_counts(),
        oracle_vs_deciders(36, &standard_params())?,
    ])
}
