use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linesing::invariants::{self, Problem, Q44Status, SeriesRow};
use linesing::{ideal_ops, jet, Error, ErrorKind, Ideal};
use rayon::prelude::*;

mod problem;
mod render;

use problem::Overrides;

/// Milnor fibre invariants of functions with a line singularity on a
/// weighted homogeneous complete intersection.
#[derive(Debug, Parser)]
#[command(name = "linesing", version)]
struct Cli {
    /// Largest truncation tried before declaring a dimension infinite.
    #[arg(long, global = true, env = "LINESING_N_MAX")]
    n_max: Option<u32>,
    /// Reduction steps allowed per standard basis.
    #[arg(long, global = true, env = "LINESING_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: j, ν, χ and the quantities cross-checking them.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// μ(f_k) against k + 1 + j + ν.
    Series {
        file: PathBuf,
        #[arg(long)]
        k_min: u32,
        #[arg(long)]
        k_max: u32,
        #[arg(long)]
        json: bool,
    },
    Check {
        which: Which,
        file: PathBuf,
    },
    /// Engine and jet-space dimensions of O/(I + m^n) for n ≤ N.
    Oracle {
        file: PathBuf,
        #[arg(long = "N", value_name = "INT")]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Q44,
    Lemma42,
    Constancy,
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Io(String),
    #[error("question not applicable: {0}")]
    Inapplicable(String),
    #[error("{0}")]
    Inconclusive(String),
    #[error("{0}")]
    Mismatch(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e.kind() {
                ErrorKind::Precondition => 2,
                ErrorKind::NonFinite => 3,
                ErrorKind::Parse => 4,
                ErrorKind::Exhausted => 5,
                ErrorKind::Internal => 1,
            },
            Failure::Inapplicable(_) => 2,
            Failure::Schema(_) | Failure::Io(_) => 4,
            Failure::Inconclusive(_) => 5,
            Failure::Mismatch(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    let over = Overrides {
        n_max: cli.n_max,
        budget: cli.budget,
    };
    match run(cli.command, over) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("linesing: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load(file: &Path, over: Overrides) -> Result<Problem, Failure> {
    problem::read(file)?.build(over)
}

fn run(command: Command, over: Overrides) -> Result<(), Failure> {
    match command {
        Command::Invariants { file, json } => {
            let p = load(&file, over)?;
            let report = invariants::compute_report(&p)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", render::report(&report));
            }
        }
        Command::Series { file, k_min, k_max, json } => {
            if k_min == 0 || k_max < k_min {
                return Err(Error::PreconditionViolation(format!("need 1 ≤ k-min ≤ k-max, got {k_min}..{k_max}")).into());
            }
            let p = load(&file, over)?;
            let rows = series(&p, k_min, k_max)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
            } else {
                print!("{}", render::series(&rows));
            }
        }
        Command::Check { which, file } => {
            let p = load(&file, over)?;
            match which {
                Which::Q44 => {
                    let verdict = invariants::q44_check(&p)?;
                    println!("{verdict}");
                    if verdict.status == Q44Status::Inapplicable {
                        return Err(Failure::Inapplicable(verdict.reason.unwrap_or_default()));
                    }
                }
                Which::Lemma42 => match invariants::lemma42_sweep(&p)? {
                    Some(k) => println!("equality from k={k}, verified {} consecutive k", p.config.run),
                    None => {
                        return Err(Failure::Inconclusive(format!(
                            "no {} consecutive k with equality in {}..={}",
                            p.config.run, p.config.k_min, p.config.k_max
                        )))
                    }
                },
                Which::Constancy => {
                    let constant = invariants::check_constancy(&p)?;
                    println!("{}", if constant { "constant" } else { "not constant" });
                }
            }
        }
        Command::Oracle { file, n } => {
            let p = load(&file, over)?;
            oracle(&p, n)?;
        }
    }
    Ok(())
}

/// Rows are independent, so they run in parallel; output stays ordered by k.
fn series(p: &Problem, k_min: u32, k_max: u32) -> Result<Vec<SeriesRow>, Failure> {
    let j = invariants::jacobian_number(p)?;
    let nu = invariants::nu(p)?;
    let rows: Vec<_> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| invariants::series_row(p, k, j + nu))
        .collect();
    Ok(rows.into_iter().collect::<Result<_, _>>()?)
}

fn oracle(p: &Problem, n: u32) -> Result<(), Failure> {
    let mut ideals: Vec<(String, Ideal)> = vec![("h + J_X(f)".into(), p.h_plus_jx(&p.f))];
    for k in p.config.k_min..p.config.k_min + 3 {
        ideals.push((format!("h + J_X(f_{k})"), p.series_ideal(k)));
    }
    let mut table = Vec::new();
    for (label, ideal) in &ideals {
        let space = jet::JetSpace::of_ideal(ideal, n);
        let mut engine = ideal_ops::Truncation::below(ideal, n)?;
        let rows: Vec<_> = (1..=n).map(|m| (m, engine.dim_below(m), space.dim_below(m))).collect();
        table.push((label.clone(), rows));
    }
    print!("{}", render::oracle(&table));
    let bad = table.iter().flat_map(|(_, rows)| rows).filter(|(_, e, o)| e != o).count();
    if bad > 0 {
        return Err(Failure::Mismatch(format!("{bad} truncations disagree")));
    }
    Ok(())
}
