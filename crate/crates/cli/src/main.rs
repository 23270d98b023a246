//! Command-line front end: exact tables of the permutation-class counts,
//! verification suites with machine-readable reports, and direct access to
//! the cycle-splitting map and its fibers.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use derangements::oracle::Family;
use derangements::permutation::{Parity, Permutation};
use derangements::sequences::{self, TableMethod};
use derangements::split::{self, SplitCondition};

use derangements_cli::report::VerifyReport;
use derangements_cli::suites::{self, VerifyConfig};
use derangements_cli::table::{self, OutputFormat};

#[derive(Parser)]
#[command(
    name = "derangements",
    version,
    about = "Exact tables and verification for derangement-like permutation counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a family count for n = 0..=n-max
    Table {
        /// One of: block, block-k, block-par, block-k-par, sep, sep-par
        #[arg(long)]
        family: Family,
        /// Size of the distinguished front block
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Front images (block families) or front fixed points (sep families)
        #[arg(long, default_value_t = 0)]
        u: usize,
        /// Fixed points in the tail
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Front cycle count, for the -k families
        #[arg(long)]
        k: Option<usize>,
        /// Parity 0/1, for the -par families
        #[arg(long)]
        i: Option<Parity>,
        /// Last tail size tabulated
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Output format: csv, json, or bfile
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        /// Computation method: formula, recurrence, egf, or oracle
        #[arg(long, default_value = "formula")]
        method: TableMethod,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites
    Verify {
        /// One of: main, lemma, partition, recurrence, egf, sign, all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Cap on r+n for the enumeration-backed suites
        #[arg(long)]
        max_size: Option<usize>,
        /// Front cap for the formula-only grids
        #[arg(long)]
        r_max: Option<usize>,
        /// Tail cap for the formula-only grids
        #[arg(long)]
        n_max: Option<usize>,
        /// Emit the reports as JSON
        #[arg(long)]
        json: bool,
        /// Write the reports to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split the cycles of a permutation at its front elements
    Split {
        /// Permutation, as one-line `[3,4,2,1]` or cycles `(1 3 2 4)`
        perm: Permutation,
        /// Size of the distinguished front block
        #[arg(long)]
        r: usize,
    },
    /// List the splitting preimages of a separated permutation
    Fiber {
        /// Separated permutation, as one-line form or cycles
        perm: Permutation,
        /// Size of the distinguished front block
        #[arg(long)]
        r: usize,
        /// Condition on the front cycle count: any, k=K, parity=P,
        /// k=K,parity=P, or mod=C/D
        #[arg(long, default_value = "any")]
        condition: SplitCondition,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Table {
            family,
            r,
            u,
            m,
            k,
            i,
            n_max,
            format,
            method,
            out,
        } => {
            let table = sequences::build_table(family, r, u, m, k, i, n_max, method)
                .map_err(|err| err.to_string())?;
            emit(out, table::render(&table, format))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_size,
            r_max,
            n_max,
            json,
            out,
        } => {
            let selected = suites::parse_selection(&suite)?;
            let mut config = VerifyConfig::default();
            if let Some(size) = max_size {
                config.max_size = size;
                config.lemma_size = size.saturating_sub(1);
            }
            if let Some(r) = r_max {
                config.r_max = r;
            }
            if let Some(n) = n_max {
                config.n_max = n;
            }
            let reports: Vec<VerifyReport> = selected
                .into_iter()
                .map(|suite| suites::run(suite, &config))
                .collect();
            let all_pass = reports.iter().all(|report| report.is_success());
            let rendered = if json {
                let value = serde_json::Value::Array(
                    reports.iter().map(|report| report.to_json()).collect(),
                );
                let mut text = serde_json::to_string_pretty(&value).unwrap();
                text.push('\n');
                text
            } else {
                let mut buffer = Vec::new();
                for report in &reports {
                    report.write_human(&mut buffer, 10).unwrap();
                }
                String::from_utf8(buffer).unwrap()
            };
            emit(out, rendered)?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Split { perm, r } => {
            if r > perm.size() {
                return Err(format!(
                    "front block {r} exceeds permutation size {}",
                    perm.size()
                ));
            }
            println!("input: {perm}");
            println!("split: {}", split::split(&perm, r));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fiber { perm, r, condition } => {
            if r > perm.size() {
                return Err(format!(
                    "front block {r} exceeds permutation size {}",
                    perm.size()
                ));
            }
            let members = split::fiber(&perm, r, &condition).map_err(|err| err.to_string())?;
            let formula =
                split::fiber_size_formula(r, &condition).map_err(|err| err.to_string())?;
            println!("base:      {perm}");
            println!("condition: {condition}");
            println!("formula:   {formula}");
            println!("members:   {}", members.len());
            for member in &members {
                println!("  {member}");
            }
            if num_bigint::BigInt::from(members.len()) != formula {
                eprintln!("error: fiber size disagrees with the formula");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(out: Option<PathBuf>, text: String) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(&path, text).map_err(|err| format!("cannot write {}: {err}", path.display()))
        }
        None => {
            use std::io::Write;
            // A closed pipe (e.g. `| head`) is not an error for this tool.
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(err) if err.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(format!("cannot write to standard output: {err}"))
                }
                _ => Ok(()),
            }
        }
    }
}
