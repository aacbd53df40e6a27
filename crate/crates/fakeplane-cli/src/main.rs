//! Command-line front end: build catalogue families, emit verdict reports,
//! export dual graphs, run move scripts, and run the verification sweep.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 verification
//! mismatch.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fakeplane::families::{self, build, list_families, verify, FamilyError, ParamValue, Params};
use fakeplane::moves::{assert_endpoint, run_script, MoveScript};
use fakeplane::report::Report;

#[derive(Parser)]
#[command(
    name = "fakeplane",
    about = "Exact-arithmetic lattice toolkit for rational surfaces with real structure",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalogue family, verify it, and optionally write artifacts.
    Family {
        /// Family name (see `list`).
        name: String,
        /// Parameter assignments, `key=value` or `key=a,b,c`.
        #[arg(short = 'p', long = "param")]
        params: Vec<String>,
        /// JSON file with parameters ({"p": 3, "mu_plus": [2, 3]}).
        #[arg(long)]
        params_file: Option<PathBuf>,
        /// Write the verification report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the boundary dual graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a move script file and check its expected endpoint.
    Moves {
        /// Script JSON: {"start": ..., "moves": [...], "expect": ...}.
        script: PathBuf,
    },
    /// Verify the whole catalogue with default parameters plus the sweep.
    VerifyAll {
        /// Only run instances whose family name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// List the catalogue.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Family {
            name,
            params,
            params_file,
            json,
            dot,
        } => cmd_family(&name, &params, params_file, json, dot),
        Command::Moves { script } => cmd_moves(&script),
        Command::VerifyAll { filter } => cmd_verify_all(filter.as_deref()),
        Command::List => {
            for info in list_families() {
                let params = if info.params.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", info.params)
                };
                println!("{:24} {}{}", info.name, info.summary, params);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_params(args: &[String], file: Option<PathBuf>) -> anyhow::Result<Params> {
    let mut params = Params::new();
    if let Some(path) = file {
        let text = fs::read_to_string(&path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| anyhow::anyhow!("parameter file must hold a JSON object"))?;
        for (k, v) in obj {
            let parsed = match v {
                serde_json::Value::Number(n) => ParamValue::Int(
                    n.as_i64()
                        .ok_or_else(|| anyhow::anyhow!("parameter '{k}' must be an integer"))?,
                ),
                serde_json::Value::Array(items) => ParamValue::List(
                    items
                        .iter()
                        .map(|i| {
                            i.as_i64().ok_or_else(|| {
                                anyhow::anyhow!("parameter '{k}' must list integers")
                            })
                        })
                        .collect::<Result<_, _>>()?,
                ),
                _ => anyhow::bail!("parameter '{k}' must be an integer or integer list"),
            };
            params.0.insert(k.clone(), parsed);
        }
    }
    for assignment in args {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("parameter '{assignment}' is not key=value"))?;
        let parsed = if value.contains(',') {
            ParamValue::List(
                value
                    .split(',')
                    .map(|v| v.trim().parse::<i64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| anyhow::anyhow!("parameter '{key}' must list integers"))?,
            )
        } else {
            ParamValue::Int(
                value
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| anyhow::anyhow!("parameter '{key}' must be an integer"))?,
            )
        };
        params.0.insert(key.to_string(), parsed);
    }
    Ok(params)
}

fn cmd_family(
    name: &str,
    param_args: &[String],
    params_file: Option<PathBuf>,
    json: Option<PathBuf>,
    dot: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let params = match parse_params(param_args, params_file) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(ExitCode::from(1));
        }
    };
    let outcome = match verify(name, &params) {
        Ok(o) => o,
        Err(
            e @ (FamilyError::UnknownFamily(_)
            | FamilyError::BadParam(_)
            | FamilyError::Constraint(_)),
        ) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };

    if let Some(path) = &dot {
        let built = match build(name, &params) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(1));
            }
        };
        match &built.model {
            Some(model) => {
                let graph = model.boundary_dual_graph().map_err(FamilyError::from)?;
                fs::write(path, graph.to_dot(name))?;
            }
            None => {
                eprintln!("error: family '{name}' has no boundary dual graph to export");
                return Ok(ExitCode::from(1));
            }
        }
    }

    let report = Report::from_outcome(&outcome);
    if let Some(path) = &json {
        fs::write(path, report.to_json())?;
    }

    for check in &outcome.checks {
        let status = if check.passed { "ok" } else { "MISMATCH" };
        println!("{status:8} {}: {}", check.name, check.detail);
    }
    println!(
        "{name}: {}",
        if outcome.passed {
            "all checks passed"
        } else {
            "verification mismatch"
        }
    );
    Ok(if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_moves(path: &PathBuf) -> anyhow::Result<ExitCode> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Ok(ExitCode::from(1));
        }
    };
    let script: MoveScript = match serde_json::from_str(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: script does not parse: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let end = match run_script(&script.start, &script.moves) {
        Ok(end) => end,
        Err(e) => {
            eprintln!("script failed: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    println!(
        "final state: {} curves, picard rank {}",
        end.curves.len(),
        end.picard_rank
    );
    for c in &end.curves {
        println!("  {} : {}", c.label, c.self_int);
    }
    if let Some(expected) = &script.expect {
        match assert_endpoint(&end, expected) {
            Ok(()) => {
                println!("endpoint matches");
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                eprintln!("{e}");
                Ok(ExitCode::from(2))
            }
        }
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_verify_all(filter: Option<&str>) -> anyhow::Result<ExitCode> {
    let mut all_passed = true;
    let mut ran = 0usize;
    for (name, params) in families::default_sweep() {
        if let Some(f) = filter {
            if !name.contains(f) {
                continue;
            }
        }
        ran += 1;
        let shown = {
            let m = params.display_map();
            if m.is_empty() {
                name.clone()
            } else {
                format!(
                    "{name}({})",
                    m.iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        };
        match verify(&name, &params) {
            Ok(outcome) if outcome.passed => println!("ok       {shown}"),
            Ok(outcome) => {
                all_passed = false;
                println!("MISMATCH {shown}");
                for check in outcome.checks.iter().filter(|c| !c.passed) {
                    println!("         {}: {}", check.name, check.detail);
                }
            }
            Err(e) => {
                all_passed = false;
                println!("ERROR    {shown}: {e}");
            }
        }
    }
    println!(
        "{ran} instances, {}",
        if all_passed {
            "all passed"
        } else {
            "mismatches found"
        }
    );
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
