use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lgtft::jacobi::GroebnerStore;
use lgtft::jobs::{default_cache_dir, diff_reports, run_job, DiskCache, JobSpec};
use lgtft::Error;

/// Landau-Ginzburg open/closed TFT computations from job files.
#[derive(Parser)]
#[command(name = "lgtft", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job file and write the JSON report.
    Run {
        job: PathBuf,
        /// Override every degree bound in the job.
        #[arg(long, allow_negative_numbers = true)]
        degree_bound: Option<i64>,
        /// Neither read nor write the Gröbner basis cache.
        #[arg(long)]
        no_cache: bool,
        /// Normalization override such as `c_d=1/2`, `bulk=2` or `cardy_sign=literal`.
        #[arg(long, value_name = "KEY=VALUE")]
        normalization: Vec<String>,
        /// Report path; defaults to the job's `output.report`, else stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Field-level diff of two reports, ignoring timing.
    Diff { r1: PathBuf, r2: PathBuf },
    /// Remove cached Gröbner bases.
    CleanCache,
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_validation() { 2 } else { 1 })
}

fn run(
    job: PathBuf,
    degree_bound: Option<i64>,
    no_cache: bool,
    normalization: Vec<String>,
    output: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let mut spec = JobSpec::load(&job)?;
    if let Some(b) = degree_bound {
        if b < 0 {
            return Err(Error::NegativeBound(b));
        }
        spec.degree_bound = Some(b);
        spec.koszul_bound = Some(b);
    }
    for setting in &normalization {
        spec.apply_normalization_override(setting)?;
    }
    let cache = (!no_cache).then(|| DiskCache::new(default_cache_dir()));
    let report = run_job(&spec, cache.as_ref().map(|c| c as &dyn GroebnerStore));
    let json = report.to_json();
    match output.or_else(|| spec.output.clone()) {
        Some(path) => std::fs::write(path, json)?,
        None => print!("{json}"),
    }
    eprint!("{}", report.summary());
    Ok(if report.has_errors() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn diff(r1: PathBuf, r2: PathBuf) -> Result<ExitCode, Error> {
    let read = |p: &PathBuf| -> Result<serde_json::Value, Error> { Ok(serde_json::from_slice(&std::fs::read(p)?)?) };
    let entries = diff_reports(&read(&r1)?, &read(&r2)?)?;
    println!("{}", serde_json::to_string_pretty(&entries)?);
    eprintln!("{} differing field(s)", entries.len());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { job, degree_bound, no_cache, normalization, output } => {
            run(job, degree_bound, no_cache, normalization, output)
        }
        Command::Diff { r1, r2 } => diff(r1, r2),
        Command::CleanCache => {
            let cache = DiskCache::new(default_cache_dir());
            cache.clean().map(|n| {
                eprintln!("removed {n} cache entr{} from {}", if n == 1 { "y" } else { "ies" }, cache.dir().display());
                ExitCode::SUCCESS
            })
        }
    };
    result.unwrap_or_else(|e| exit_for(&e))
}
