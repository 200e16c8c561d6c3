//! Run a job file in-process, print the summary, then rerun with a changed
//! normalization and show the field-level diff.
//!
//! `cargo run --example job_report -- crates/core/examples/jobs/x3.toml`

use lgtft::jobs::{diff_reports, run_job, JobSpec};

fn main() -> lgtft::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/jobs/x3.toml").to_string());
    let spec = JobSpec::load(path.as_ref())?;
    let report = run_job(&spec, None);
    print!("{}", report.summary());

    let mut scaled = spec.clone();
    scaled.apply_normalization_override("c_d=2")?;
    let other = run_job(&scaled, None);
    let diff = diff_reports(&serde_json::to_value(&report)?, &serde_json::to_value(&other)?)?;
    println!("with c_d = 2, {} field(s) differ:", diff.len());
    for d in diff {
        println!("  {}: {} -> {}", d.path, fmt(&d.left), fmt(&d.right));
    }
    Ok(())
}

fn fmt(v: &Option<serde_json::Value>) -> String {
    v.as_ref().map_or("(absent)".into(), ToString::to_string)
}
