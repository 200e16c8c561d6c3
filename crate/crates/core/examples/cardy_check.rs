//! Measure the Cardy constant for `W = x^n` with all Koszul branes
//! `(x^p, x^{n-p})`, and for `W = x^3 + y^3` with tensor-product branes.
//!
//! Run with `cargo run --example cardy_check`.

use lgtft::jacobi::JacobiAlgebra;
use lgtft::lg::LgPair;
use lgtft::matfact::{koszul_factorization, MatrixFactorization};
use lgtft::tft::{assemble, verify_tft_datum, CardyResult, Normalization};

fn show(label: &str, c: &CardyResult) {
    let constant = c.constant.as_ref().map_or("-".to_string(), |x| x.to_string());
    println!("  {label:<8} {:?}: c = {constant} over {} pairs", c.verdict, c.pairs_checked);
}

fn run(lg: &LgPair, branes: Vec<(String, MatrixFactorization)>) -> lgtft::Result<()> {
    let datum = assemble(lg, JacobiAlgebra::new(lg)?, &branes, None, Normalization::default())?;
    let report = verify_tft_datum(&datum);
    let failed: Vec<&str> =
        report.clauses.iter().filter(|c| c.verdict != lgtft::tft::Verdict::Pass).map(|c| c.clause.as_str()).collect();
    println!("W = {} with {} branes; non-passing clauses: {failed:?}", lg.display(lg.superpotential()), branes.len());
    show("primary", &report.cardy);
    show("other", &report.cardy_alternative);
    Ok(())
}

fn main() -> lgtft::Result<()> {
    for n in 2..=5u32 {
        let lg = LgPair::parse(&["x"], &format!("x^{n}"), None)?;
        let r = lg.ring();
        let branes = (1..n)
            .map(|p| {
                let pair = (r.parse(&format!("x^{p}"))?, r.parse(&format!("x^{}", n - p))?);
                Ok((format!("x^{p}"), koszul_factorization(&lg, &[pair])?))
            })
            .collect::<lgtft::Result<Vec<_>>>()?;
        run(&lg, branes)?;
    }
    let lg = LgPair::parse(&["x", "y"], "x^3+y^3", None)?;
    let r = lg.ring();
    let mut branes = Vec::new();
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        let pairs = vec![
            (r.parse(&format!("x^{p}"))?, r.parse(&format!("x^{}", 3 - p))?),
            (r.parse(&format!("y^{q}"))?, r.parse(&format!("y^{}", 3 - q))?),
        ];
        branes.push((format!("({p},{q})"), koszul_factorization(&lg, &pairs)?));
    }
    run(&lg, branes)?;
    for (w, vars, pairs) in [
        ("x^2+y^2", vec!["x", "y"], vec![("x", "x"), ("y", "y")]),
        ("x^4+y^2", vec!["x", "y"], vec![("x^2", "x^2"), ("y", "y")]),
        ("x^2+y^2+z^2", vec!["x", "y", "z"], vec![("x", "x"), ("y", "y"), ("z", "z")]),
    ] {
        let lg = LgPair::parse(&vars, w, None)?;
        let r = lg.ring();
        let pairs = pairs.iter().map(|(a, b)| Ok((r.parse(a)?, r.parse(b)?))).collect::<lgtft::Result<Vec<_>>>()?;
        run(&lg, vec![("K".to_string(), koszul_factorization(&lg, &pairs)?)])?;
    }
    Ok(())
}
