//! Assemble the open/closed TFT datum for `W = x^n` with all Koszul branes
//! and print the full axiom report as JSON.
//!
//! `cargo run --example tft_axioms -- 4`

use lgtft::jacobi::JacobiAlgebra;
use lgtft::lg::LgPair;
use lgtft::matfact::koszul_factorization;
use lgtft::tft::{assemble, verify_tft_datum, Normalization};

fn main() -> lgtft::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let lg = LgPair::parse(&["x"], &format!("x^{n}"), None)?;
    let r = lg.ring();
    let mut branes = Vec::new();
    for p in 1..n {
        let pair = (r.parse(&format!("x^{p}"))?, r.parse(&format!("x^{}", n - p))?);
        branes.push((format!("K{p}"), koszul_factorization(&lg, &[pair])?));
    }
    let datum = assemble(&lg, JacobiAlgebra::new(&lg)?, &branes, None, Normalization::default())?;
    for (a, (name, _)) in branes.iter().enumerate() {
        let traces: Vec<String> = datum.traces[a].iter().map(ToString::to_string).collect();
        println!("tr_{name} on End basis: {traces:?}");
    }
    let report = verify_tft_datum(&datum);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    println!("all clauses pass: {}", report.all_pass());
    Ok(())
}
