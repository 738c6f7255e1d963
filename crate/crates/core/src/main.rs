//! Command-line front end: arrangement analysis, freeness decisions,
//! certificate search and replay, and the full reproduction run.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use arrfree::catalog::{self, CatalogName, CatalogParams};
use arrfree::exactnum::Rational;
use arrfree::format::{parse_arrangement, parse_chain, parse_rational, serialize_arrangement, serialize_chain};
use arrfree::freeness::{decide_free_with, enumerate_profiles, DecideOptions, FreenessError, MethodChoice};
use arrfree::geometry::Arrangement;
use arrfree::report::{
    analyze, FreeReport, InductiveReport, ProfilesReport, ReplayReport, StuckReport,
};
use arrfree::search::{inductive_certificate, prove_stuck, replay_chain};
use arrfree::verify::{verify_paper, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "arrfree",
    version,
    about = "Exact freeness analysis of central plane arrangements over quadratic number fields"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice invariants, per-line profiles, characteristic polynomial and verdict.
    Analyze { file: PathBuf },
    /// Decide freeness, optionally forcing a method or cross-checking two engines.
    Free {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// 1-based pivot line for the Ziegler-restriction criterion.
        #[arg(long)]
        pivot: Option<usize>,
        /// On balanced inputs with at most 12 lines, run both engines and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Search for an inductive-freeness filtration and optionally emit it.
    Inductive {
        file: PathBuf,
        /// Write the replayable chain certificate to this path.
        #[arg(long, short = 'o')]
        emit: Option<PathBuf>,
    },
    /// Exhaustively search for free neighbors; a stuck result rules out
    /// recursive freeness.
    Stuck { file: PathBuf },
    /// Enumerate the combinatorial profiles balanced free arrangements can have.
    Profiles {
        /// Largest arrangement size to enumerate.
        #[arg(long)]
        max: usize,
    },
    /// Named arrangements with validated invariants.
    Catalog {
        #[command(subcommand)]
        sub: CatalogCmd,
    },
    /// Re-verify a chain certificate file by replaying it from scratch.
    Replay { file: PathBuf },
    /// Run the complete reproduction suite; exit status 0 iff all items pass.
    VerifyPaper {
        /// Parameter for the 13-line arrangement (default 2/3).
        #[arg(long, value_parser = rational_arg)]
        lambda: Option<Rational>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the catalog names.
    List,
    /// Print a catalog arrangement in the arrangement file format.
    Emit {
        name: String,
        /// Parameter for the 13-line arrangement (default 2/3).
        #[arg(long, value_parser = rational_arg)]
        lambda: Option<Rational>,
        /// Size parameter for the pencil and near-pencil families.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Abt,
    Yoshinaga,
    Classify,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

enum CliError {
    /// Bad input: unreadable files, syntax errors, violated preconditions.
    Usage(String),
    /// A broken internal invariant; exit code 2.
    Internal(String),
}

impl From<FreenessError> for CliError {
    fn from(e: FreenessError) -> Self {
        match e {
            FreenessError::CrossCheckMismatch { .. } => CliError::Internal(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_arrangement(path: &PathBuf) -> Result<Arrangement, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_arrangement(&text).map_err(usage)
}

fn emit<T: serde::Serialize>(json: bool, value: &T, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        );
    } else {
        print!("{text}");
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze { file } => {
            let arr = read_arrangement(&file)?;
            let verdict = decide_free_with(&arr, DecideOptions::default())?;
            let report = analyze(&arr, verdict).map_err(usage)?;
            emit(cli.json, &report, report.render());
        }
        Command::Free { file, method, pivot, cross_check } => {
            let arr = read_arrangement(&file)?;
            let pivot0 = match pivot {
                Some(0) => return Err(CliError::Usage("pivot is 1-based".into())),
                Some(p) => Some(p - 1),
                None => None,
            };
            let opts = DecideOptions {
                method: match method {
                    MethodArg::Auto => MethodChoice::Auto,
                    MethodArg::Abt => MethodChoice::Abt,
                    MethodArg::Yoshinaga => MethodChoice::Yoshinaga,
                    MethodArg::Classify => MethodChoice::Classify,
                },
                pivot: pivot0,
                cross_check,
            };
            let verdict = decide_free_with(&arr, opts)?;
            let report = FreeReport { ell: arr.len(), verdict, cross_checked: cross_check };
            emit(cli.json, &report, report.render());
        }
        Command::Inductive { file, emit: out } => {
            let arr = read_arrangement(&file)?;
            let verdict = decide_free_with(&arr, DecideOptions::default())?;
            let chain = inductive_certificate(&arr).map_err(usage)?;
            if let (Some(path), Some(chain)) = (&out, &chain) {
                fs::write(path, serialize_chain(chain))
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let report = InductiveReport { ell: arr.len(), verdict, chain };
            emit(cli.json, &report, report.render());
        }
        Command::Stuck { file } => {
            let arr = read_arrangement(&file)?;
            let verdict = decide_free_with(&arr, DecideOptions::default())?;
            let stuck = prove_stuck(&arr).map_err(usage)?;
            let report = StuckReport { ell: arr.len(), verdict, stuck };
            emit(cli.json, &report, report.render());
        }
        Command::Profiles { max } => {
            let report = ProfilesReport { ell_max: max, profiles: enumerate_profiles(max) };
            emit(cli.json, &report, report.render());
        }
        Command::Catalog { sub } => match sub {
            CatalogCmd::List => {
                let names: Vec<&str> = CatalogName::ALL.iter().map(|n| n.as_str()).collect();
                if cli.json {
                    println!("{}", serde_json::to_string_pretty(&names).expect("serializes"));
                } else {
                    for n in names {
                        println!("{n}");
                    }
                }
            }
            CatalogCmd::Emit { name, lambda, k } => {
                let name = CatalogName::parse(&name).map_err(usage)?;
                let entry = catalog::get(name, CatalogParams { lambda, k }).map_err(usage)?;
                if cli.json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&entry).expect("serializes")
                    );
                } else {
                    print!("{}", serialize_arrangement(&entry.arrangement));
                }
            }
        },
        Command::Replay { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
            let chain = parse_chain(&text).map_err(usage)?;
            let final_arr = replay_chain(&chain).map_err(usage)?;
            let report = ReplayReport {
                steps: chain.steps.len(),
                final_ell: final_arr.len(),
                verified: true,
            };
            emit(cli.json, &report, report.render());
        }
        Command::VerifyPaper { lambda } => {
            let corrupt = std::env::var("ARRFREE_VERIFY_CORRUPT").ok();
            let report = verify_paper(&VerifyOptions { lambda, corrupt });
            emit(cli.json, &report, report.render());
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli)));
    match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(CliError::Internal(msg))) => {
            eprintln!("internal invariant violation: {msg}");
            ExitCode::from(2)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            eprintln!("internal invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}
