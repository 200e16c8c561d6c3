//! Koszul cohomology of the contraction by `-i dW`, degree by degree.
//!
//! Run with `cargo run --example koszul_cohomology -- "x^2*y" x,y 8`.

use std::time::Instant;

use lgtft::koszul::{check_vanishing_negative_degrees, koszul_cohomology};
use lgtft::lg::LgPair;

fn main() -> lgtft::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cases: Vec<(String, Vec<String>, i64)> = if args.len() >= 2 {
        let vars = args[1].split(',').map(str::to_string).collect();
        vec![(args[0].clone(), vars, args.get(2).map_or(Ok(10), |b| b.parse()).unwrap_or(10))]
    } else {
        [("x^3", "x"), ("x^3+y^3", "x,y"), ("x^2+y^2+z^2", "x,y,z"), ("x^4+y^4", "x,y"), ("x^2*y", "x,y")]
            .iter()
            .map(|(w, v)| (w.to_string(), v.split(',').map(str::to_string).collect(), 20))
            .collect()
    };
    for (w, vars, bound) in cases {
        let start = Instant::now();
        let lg = LgPair::parse(&vars, &w, None)?;
        let table = koszul_cohomology(&lg, bound)?;
        let totals: Vec<String> =
            (0..=vars.len() as i64).map(|k| format!("H^{}={}", -k, table.total(-k))).collect();
        println!("W = {w} ({}, bound {bound}): {}", table.mode, totals.join(" "));
        let check = check_vanishing_negative_degrees(&lg, bound)?;
        match check.witness {
            None => println!("  H^k = 0 for k < 0"),
            Some((k, m, z)) => {
                let parts: Vec<String> = z
                    .components
                    .iter()
                    .map(|(set, p)| {
                        let wedge: Vec<String> = set.iter().map(|&j| format!("d{}", vars[j])).collect();
                        format!("({})*{}", lg.display(p), wedge.join("^"))
                    })
                    .collect();
                println!("  non-bounding cocycle in H^{k}, internal degree {m}: {}", parts.join(" + "));
            }
        }
        println!("  {:.2?}", start.elapsed());
    }
    Ok(())
}
