use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubic_lines::census::DEFAULT_TOL;
use cubic_lines::reproduce::Group;
use cubic_lines_cli::{AnalyzeArgs, CliError, EnumerateArgs, Output};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cubic-lines", version, about = "Freeness and singularity analysis of arrangements of smooth cubics and lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singularity census, mdr, total Tjurina number and freeness verdict of an arrangement file.
    Analyze {
        file: PathBuf,
        /// Print the machine-readable report.
        #[arg(long)]
        json: bool,
        /// Projective distance below which intersection points are merged.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Seed for the random projections of the census.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Weak combinatorics of k cubics and d lines with nodes, ordinary triple points and A5 points.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        cubics: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        lines: u32,
        /// Keep only rows whose Tjurina number matches a free arrangement.
        #[arg(long)]
        free_only: bool,
        /// Drop rows that violate the Hirzebruch-type inequality.
        #[arg(long)]
        hirzebruch_filter: bool,
        #[arg(long)]
        json: bool,
    },
    /// Admissible minimal syzygy degrees of a free arrangement of degree M.
    Window {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print a built-in arrangement (EL6, EL7, CPPP, FERMAT), optionally writing its file.
    Example {
        name: String,
        /// Write the arrangement file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run the reproduction suite and print a pass/fail matrix.
    ReproducePaper {
        /// Run only this group (repeatable).
        #[arg(long, value_parser = parse_group)]
        only: Vec<Group>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_group(s: &str) -> Result<Group, String> {
    Group::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Group::ALL.iter().map(|g| g.as_str()).collect();
        format!("unknown group {s:?}; expected one of {}", names.join(", "))
    })
}

fn emit<T: Serialize>(out: Result<Output<T>, CliError>, json: bool) -> ExitCode {
    match out {
        Ok(out) => {
            if json {
                print!("{}", out.report.to_json());
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit as u8)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { file, json, tol, seed } => {
            emit(cubic_lines_cli::analyze(&AnalyzeArgs { file, tol, seed }), json)
        }
        Command::Enumerate { cubics, lines, free_only, hirzebruch_filter, json } => emit(
            cubic_lines_cli::enumerate(EnumerateArgs { cubics, lines, free_only, hirzebruch_filter }),
            json,
        ),
        Command::Window { degree, json } => emit(cubic_lines_cli::window(degree), json),
        Command::Example { name, emit: path } => emit(cubic_lines_cli::example(&name, path.as_deref()), false),
        Command::ReproducePaper { only, json } => emit(cubic_lines_cli::reproduce(&only), json),
    }
}
