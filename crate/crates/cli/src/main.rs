mod commands;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use iorealize::real::DEFAULT_HEIGHT_BOUND;
use iorealize::ProblemFile;

use commands::Options;
use report::Report;

/// Exact realizations of input-output equations.
#[derive(Parser, Debug)]
#[command(name = "iorealize", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized choices inside factorization.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Height bound of the rational point search on conics.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT_BOUND)]
    height_bound: u64,

    /// Verify results against the equation (default).
    #[arg(long, global = true, overrides_with = "no_verify")]
    verify: bool,

    /// Skip the final verification.
    #[arg(long, global = true)]
    no_verify: bool,

    /// Print the elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
enum Verb {
    /// Corresponding parametrization of a realization.
    Param { file: PathBuf },
    /// Realization from a parametrization.
    Realize { file: PathBuf },
    /// Order obstruction and parametrization shape conditions.
    Check { file: PathBuf },
    /// Implicit equation of a first-order parametrization.
    Implicitize { file: PathBuf },
    /// Observable realization of a first-order equation.
    Observable { file: PathBuf },
    /// Real realization of a first-order equation.
    Real { file: PathBuf },
    /// Check a realization against its equation.
    Verify { file: PathBuf },
}

impl Verb {
    fn file(&self) -> &PathBuf {
        match self {
            Verb::Param { file }
            | Verb::Realize { file }
            | Verb::Check { file }
            | Verb::Implicitize { file }
            | Verb::Observable { file }
            | Verb::Real { file }
            | Verb::Verify { file } => file,
        }
    }
}

fn load(path: &PathBuf) -> Result<ProblemFile> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    ProblemFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: &Cli) -> Result<Report> {
    let pf = load(cli.verb.file())?;
    let opts = Options { seed: cli.seed, height_bound: cli.height_bound, verify: !cli.no_verify };
    match &cli.verb {
        Verb::Param { .. } => commands::param(&pf, &opts),
        Verb::Realize { .. } => commands::realize(&pf, &opts),
        Verb::Check { .. } => commands::check(&pf, &opts),
        Verb::Implicitize { .. } => commands::implicitize(&pf, &opts),
        Verb::Observable { .. } => commands::observable(&pf, &opts),
        Verb::Real { .. } => commands::real(&pf, &opts),
        Verb::Verify { .. } => commands::verify(&pf, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(report) => {
            let out = if cli.json { report.to_json() } else { report.to_text() };
            print!("{out}");
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
