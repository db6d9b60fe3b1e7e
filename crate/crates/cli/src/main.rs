//! Command-line front end: parse group literals and variety parameters,
//! dispatch into the library, and render text or JSON.
//!
//! Exit codes: 0 success, 1 internal mismatch (sweeps and selfcheck),
//! 2 usage or parse errors, 3 unsupported variety, 4 resource limit.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgAction, Parser, Subcommand};

use outercomm::capability::{self, CapabilityVerdict, OracleOutcome, VarietySelector};
use outercomm::groups::FgAbelianGroup;
use outercomm::hall;
use outercomm::multiplier;
use outercomm::selfcheck::{self, CheckReport};
use outercomm::{Count, Error, VarietyParams};

#[derive(Parser)]
#[command(
    name = "outercomm",
    about = "Outer commutator multipliers and capability of finitely generated abelian groups",
    after_help = "Group literals look like \"Z^2 x Z12 x Z6\" or \"Z_4 + Z_2\". \
                  Set OUTERCOMM_ENUM_CAP to override every enumeration cap at once."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of basic commutators of a given weight on d generators
    Witt {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        weight: u32,
        #[arg(long)]
        generators: u32,
    },
    /// List basic commutators by weight
    Hall {
        #[arg(long)]
        generators: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_weight: u32,
        #[arg(long, action = ArgAction::SetTrue)]
        json: bool,
    },
    /// Multiplier of a group for the (c1, c2) outer commutator variety
    Multiplier {
        #[arg(long)]
        group: String,
        #[arg(long)]
        c1: u32,
        #[arg(long)]
        c2: u32,
        #[arg(long, action = ArgAction::SetTrue)]
        json: bool,
    },
    /// Decide capability of a group for a chosen variety
    Capable {
        #[arg(long)]
        group: String,
        /// One of: baer, nc:C, outer:C1,C2, s2
        #[arg(long)]
        variety: String,
        /// Re-derive the verdict by the quotient-size oracle (finite groups)
        #[arg(long, action = ArgAction::SetTrue)]
        oracle: bool,
        #[arg(long, action = ArgAction::SetTrue)]
        json: bool,
    },
    /// Compare oracle and closed-form verdicts over all groups up to an order
    Sweep {
        #[arg(long)]
        max_order: u64,
        /// Semicolon-separated parameter pairs, e.g. "2,1;2,2;3,2"
        #[arg(long)]
        params: String,
        #[arg(long, action = ArgAction::SetTrue)]
        json: bool,
    },
    /// Run the bundled invariant suites
    Selfcheck,
}

fn main() -> ExitCode {
    if let Some(value) = std::env::var_os(outercomm::caps::ENV_VAR) {
        if value
            .to_str()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .is_none()
        {
            eprintln!(
                "error: {} must be an unsigned integer",
                outercomm::caps::ENV_VAR
            );
            return ExitCode::from(2);
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UnsupportedVariety { .. } | Error::MetabelianRoute => 3,
        Error::ResourceLimit { .. } => 4,
        _ => 2,
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Witt { weight, generators } => {
            println!(
                "{}",
                outercomm::arith::witt(weight, &Count::from(generators))
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Hall {
            generators,
            max_weight,
            json,
        } => run_hall(generators, max_weight, json),
        Command::Multiplier {
            group,
            c1,
            c2,
            json,
        } => run_multiplier(&group, c1, c2, json),
        Command::Capable {
            group,
            variety,
            oracle,
            json,
        } => run_capable(&group, &variety, oracle, json),
        Command::Sweep {
            max_order,
            params,
            json,
        } => run_sweep(max_order, &params, json),
        Command::Selfcheck => run_selfcheck(),
    }
}

fn run_hall(generators: u32, max_weight: u32, json: bool) -> Result<ExitCode, Error> {
    let mut levels = Vec::new();
    for weight in 1..=max_weight {
        let commutators = hall::enumerate_basic(generators, weight)?;
        let rendered: Vec<String> = commutators.iter().map(|c| c.to_string()).collect();
        levels.push((weight, rendered));
    }
    if json {
        let levels_json: Vec<serde_json::Value> = levels
            .iter()
            .map(|(weight, rendered)| {
                serde_json::json!({
                    "weight": weight,
                    "count": rendered.len(),
                    "commutators": rendered,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "generators": generators,
            "max_weight": max_weight,
            "levels": levels_json,
        });
        println!("{doc}");
    } else {
        for (weight, rendered) in &levels {
            println!(
                "w={weight} count={}: {}",
                rendered.len(),
                rendered.join(", ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_multiplier(group: &str, c1: u32, c2: u32, json: bool) -> Result<ExitCode, Error> {
    let group = FgAbelianGroup::from_str(group)?;
    let params = VarietyParams::new(c1, c2)?;
    let report = multiplier::report(&group, &params)?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!("input: {}", report.input);
        println!("variety: (c1, c2) = ({c1}, {c2})");
        println!("multiplier: {}", report.multiplier);
        println!("size: {}", report.size);
        let exponents: Vec<String> = report.exponents_b.iter().map(Count::to_string).collect();
        println!("exponents: {}", exponents.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_variety(text: &str) -> Result<VarietySelector, Error> {
    let bad = |msg: String| Error::ParseGroup { pos: 0, msg };
    if text == "baer" {
        return Ok(VarietySelector::Baer);
    }
    if text == "s2" {
        return Ok(VarietySelector::Metabelian);
    }
    if let Some(class) = text.strip_prefix("nc:") {
        let c: u32 = class
            .parse()
            .map_err(|_| bad(format!("invalid nilpotency class {class:?}")))?;
        if c == 0 {
            return Err(bad("nilpotency class must be at least 1".into()));
        }
        return Ok(VarietySelector::Nilpotent(c));
    }
    if let Some(pair) = text.strip_prefix("outer:") {
        let (c1, c2) = pair
            .split_once(',')
            .ok_or_else(|| bad(format!("expected outer:C1,C2, found {text:?}")))?;
        let c1: u32 = c1
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid c1 {c1:?}")))?;
        let c2: u32 = c2
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid c2 {c2:?}")))?;
        let params = VarietyParams::new(c1, c2)?;
        // (1, 1) is the metabelian variety; route it there quietly
        if params.is_metabelian() {
            return Ok(VarietySelector::Metabelian);
        }
        return VarietySelector::outer(params);
    }
    Err(bad(format!(
        "unknown variety {text:?}; expected baer, nc:C, outer:C1,C2, or s2"
    )))
}

fn run_capable(group: &str, variety: &str, oracle: bool, json: bool) -> Result<ExitCode, Error> {
    let group = FgAbelianGroup::from_str(group)?;
    let selector = parse_variety(variety)?;
    let routed = variety.starts_with("outer:") && selector == VarietySelector::Metabelian;
    let closed_form = selector.decide(&group)?;

    let mut method = if routed {
        "closed-form (metabelian route)".to_string()
    } else {
        "closed-form".to_string()
    };
    let mut capable = closed_form;
    let mut witness = None;
    if oracle {
        let params = selector.oracle_params().ok_or(Error::Domain(
            "the oracle needs an outer or s2 variety; baer and nc have no parameter pair",
        ))?;
        let OracleOutcome {
            capable: oracle_says,
            witness: found,
        } = capability::oracle_verdict(&group, &params)?;
        if oracle_says != closed_form {
            eprintln!(
                "internal mismatch: oracle says {oracle_says}, closed form says {closed_form}"
            );
            return Ok(ExitCode::from(1));
        }
        capable = oracle_says;
        witness = found;
        method = "oracle".to_string();
    }

    if json {
        let verdict = CapabilityVerdict {
            group: group.clone(),
            variety: selector,
            capable,
            method,
            witness,
        };
        println!(
            "{}",
            serde_json::to_string(&verdict).expect("verdict serializes")
        );
    } else {
        println!("group: {group}");
        println!("variety: {selector}");
        println!("capable: {capable}");
        println!("method: {method}");
        if let Some(w) = &witness {
            println!("witness: {w}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_params_list(text: &str) -> Result<Vec<VarietyParams>, Error> {
    let bad = |msg: String| Error::ParseGroup { pos: 0, msg };
    let mut out = Vec::new();
    for chunk in text.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let (c1, c2) = chunk
            .split_once(',')
            .ok_or_else(|| bad(format!("expected C1,C2 pairs, found {chunk:?}")))?;
        let c1: u32 = c1
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid c1 {c1:?}")))?;
        let c2: u32 = c2
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid c2 {c2:?}")))?;
        out.push(VarietyParams::new(c1, c2)?);
    }
    if out.is_empty() {
        return Err(bad("empty parameter list".into()));
    }
    Ok(out)
}

fn run_sweep(max_order: u64, params: &str, json: bool) -> Result<ExitCode, Error> {
    let params = parse_params_list(params)?;
    let report = selfcheck::oracle_vs_deciders(max_order, &params)?;
    if json {
        let doc = serde_json::json!({
            "max_order": max_order,
            "params": params.iter().map(|p| serde_json::json!({"c1": p.c1(), "c2": p.c2()})).collect::<Vec<_>>(),
            "comparisons": report.checks,
            "mismatches": report.failures,
        });
        println!("{doc}");
    } else {
        println!(
            "checked {} decider-vs-oracle comparisons up to order {max_order}: {} mismatches",
            report.checks,
            report.failures.len()
        );
        for failure in &report.failures {
            println!("MISMATCH {failure}");
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_selfcheck() -> Result<ExitCode, Error> {
    let reports = selfcheck::run_all()?;
    let mut all_passed = true;
    for CheckReport {
        name,
        checks,
        failures,
    } in &reports
    {
        if failures.is_empty() {
            println!("{name}: ok ({checks} checks)");
        } else {
            all_passed = false;
            println!("{name}: FAILED ({} of {checks} checks)", failures.len());
            for failure in failures {
                println!("  {failure}");
            }
        }
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
