//! Command-line front end: classification listings, the built-in
//! examples, and evaluation of setups described in a file, all reported
//! as deterministic JSON on standard output.
//!
//! Exit codes: 0 on success, 1 on a domain error (impossible setup,
//! missing file), 2 on a parse error (bad arguments or malformed input
//! text).  Diagnostics go to standard error.

pub mod evalfile;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::delpezzo;
use crate::error::{Error, Result};
use crate::ktheory::KClass;
use crate::localbps::{gv_table, multiple_cover_check, SheafModuli};
use crate::localgw::{
    builtin_example, local_gw_genus0, local_gw_genus0_dualizing, DualizingOutcome, FamilySetup,
    GwOutcome,
};

#[derive(Parser)]
#[command(
    name = "sncdp",
    version,
    about = "Exact intersection theory for glued del Pezzo surfaces and their local invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the configurations with a given number of components.
    Classify {
        /// Number of surface components.
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
        rank: u32,
        /// Largest ruled-surface index to search.
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        /// Largest fiber coefficient to allow in boundary curves.
        #[arg(long, default_value_t = 8)]
        bmax: u32,
    },
    /// Evaluate a built-in example end to end.
    Example {
        /// Which example to run.
        #[arg(value_parser = ["f1f1", "p2f6"])]
        name: String,
        /// Include every intermediate index row in the report.
        #[arg(long)]
        show_intermediates: bool,
    },
    /// Evaluate a family setup described in a TOML file.
    Eval {
        /// Path to the description; see the shipped samples for the format.
        file: PathBuf,
    },
}

/// Runs the tool on an argument vector (including the program name) and
/// returns the exit code.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    0
                }
                _ => {
                    eprint!("{err}");
                    2
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_parse_error() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cmd: &Cmd) -> Result<Value> {
    match cmd {
        Cmd::Classify { rank, nmax, bmax } => classify_report(*rank, *nmax, *bmax),
        Cmd::Example { name, show_intermediates } => example_report(name, *show_intermediates),
        Cmd::Eval { file } => eval_report(file),
    }
}

fn report_head(command: &str, inputs: Value) -> Value {
    json!({
        "schema": 1,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs,
    })
}

fn merge(mut head: Value, tail: Value) -> Value {
    let (Value::Object(head_map), Value::Object(tail_map)) = (&mut head, tail) else {
        unreachable!("reports are objects");
    };
    head_map.extend(tail_map);
    head
}

fn classify_report(rank: u32, nmax: u32, bmax: u32) -> Result<Value> {
    let found = delpezzo::classify(rank, nmax, bmax)?;
    let configurations: Vec<String> = found.configs.iter().map(|c| c.describe()).collect();
    Ok(merge(
        report_head(
            "classify",
            json!({
                "rank": rank.to_string(),
                "nmax": nmax.to_string(),
                "bmax": bmax.to_string(),
            }),
        ),
        json!({
            "complete": found.complete,
            "count": configurations.len().to_string(),
            "configurations": configurations,
        }),
    ))
}

fn rows(list: &[KClass]) -> Vec<String> {
    list.iter().map(|k| k.ch().to_string()).collect()
}

fn intermediates(outcome: &GwOutcome, dualizing: Option<&DualizingOutcome>) -> Value {
    let mut table = json!({
        "bundle_rows": rows(&outcome.bundle_index.rows),
        "bundle_node": outcome.bundle_index.node.ch().to_string(),
        "bundle_total": outcome.bundle_index.total.ch().to_string(),
        "tangent_rows": rows(&outcome.tangent_index.rows),
        "tangent_node": outcome.tangent_index.node.ch().to_string(),
        "tangent_total": outcome.tangent_index.total.ch().to_string(),
        "difference": outcome.difference.ch().to_string(),
        "difference_chern": outcome.difference_chern.to_string(),
        "moduli_chern": outcome.moduli_chern.to_string(),
    });
    if let Some(dual) = dualizing {
        table = merge(
            table,
            json!({
                "dualizing_rows": rows(&dual.index.rows),
                "dualizing_node": dual.index.node.ch().to_string(),
                "dualizing_total": dual.index.total.ch().to_string(),
                "dualizing_chern": dual.index_chern.to_string(),
                "dualizing_chern_inverse": dual.chern_inverse.to_string(),
                "dualizing_invariant": dual.invariant.to_string(),
            }),
        );
    }
    table
}

fn gw_payload(setup: &FamilySetup, show: bool) -> Result<(Value, GwOutcome)> {
    let outcome = local_gw_genus0(setup)?;
    // The shortcut applies only over a pencil; include it when it does.
    let dualizing = match local_gw_genus0_dualizing(setup) {
        Ok(d) => Some(d),
        Err(Error::Unsupported(_)) => None,
        Err(other) => return Err(other),
    };
    let mut payload = json!({
        "configuration": setup.config.describe(),
        "curve_class": setup.curve_class_label,
        "moduli": setup.moduli.label(),
        "N0": outcome.invariant.to_string(),
    });
    if let Some(dual) = &dualizing {
        if dual.invariant != outcome.invariant {
            return Err(Error::Inconsistent(format!(
                "the two computations disagree: {} vs {}",
                outcome.invariant, dual.invariant
            )));
        }
    }
    if show {
        payload = merge(payload, json!({ "intermediates": intermediates(&outcome, dualizing.as_ref()) }));
    }
    Ok((payload, outcome))
}

fn example_report(name: &str, show: bool) -> Result<Value> {
    let setup = builtin_example(name)?;
    let (payload, outcome) = gw_payload(&setup, show)?;
    let moduli = SheafModuli {
        space: setup.moduli.clone(),
        label: format!("primitive class, any polarization, over the {}", setup.moduli.label()),
        hilbert_chow_embedding: true,
    };
    let table = gv_table(&moduli)?;
    let verdict = multiple_cover_check(outcome.invariant, &table, true)?;
    Ok(merge(
        merge(
            report_head(
                "example",
                json!({ "name": name, "show_intermediates": show }),
            ),
            payload,
        ),
        json!({
            "n0": table.n0.to_string(),
            "gv_higher_genus": "0",
            "multiple_cover": if verdict { "pass" } else { "fail" },
            "sheaf_moduli": moduli.label,
        }),
    ))
}

fn eval_report(file: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::InputFile(format!("{}: {e}", file.display())))?;
    let spec: evalfile::EvalSpec = toml::from_str(&text).map_err(|e| Error::Syntax {
        at: e.span().map(|s| s.start).unwrap_or(0),
        what: e.message().to_string(),
    })?;
    let setup = evalfile::assemble(&spec)?;
    let (payload, _) = gw_payload(&setup, true)?;
    Ok(merge(
        report_head(
            "eval",
            json!({
                "file": file.display().to_string(),
                "label": spec.label.clone().unwrap_or_default(),
            }),
        ),
        payload,
    ))
}
