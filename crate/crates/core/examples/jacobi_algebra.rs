//! Jacobi algebra, Milnor number, residue pairing and its Gram matrix.
//!
//! `cargo run --example jacobi_algebra -- "x^3+y^3" x,y`

use lgtft::jacobi::{residue_trace, JacobiAlgebra};
use lgtft::lg::LgPair;

fn main() -> lgtft::Result<()> {
    let mut args = std::env::args().skip(1);
    let w = args.next().unwrap_or_else(|| "x^3 - 3*x + y^4".to_string());
    let vars: Vec<String> = args.next().unwrap_or_else(|| "x,y".to_string()).split(',').map(str::to_string).collect();
    let lg = LgPair::parse(&vars, &w, None)?;
    let alg = JacobiAlgebra::new(&lg)?;
    println!("W = {}", lg.display(lg.superpotential()));
    match lg.quasi_homogeneity() {
        Some(q) => println!("quasi-homogeneous: weights {:?}, degree {}", q.weights, q.degree),
        None => println!("not quasi-homogeneous"),
    }
    let gb: Vec<String> = alg.ideal().generators().iter().map(|g| lg.display(g)).collect();
    println!("Groebner basis ({}): {gb:?}", alg.ideal().order());
    println!("mu = {}, basis {:?}", alg.dimension(), alg.basis_strings());
    println!("hess W = {}", lg.display(&lg.hessian()));
    let trace = residue_trace(&alg)?;
    let values: Vec<String> = trace.values().iter().map(ToString::to_string).collect();
    println!("Res on basis: {values:?}");
    println!("Res[hess W] = {}", alg.apply_functional(trace.values(), &lg.hessian())?);
    let gram = trace.gram(&alg);
    println!("Gram matrix rank {} of {}", gram.rank(), alg.dimension());
    Ok(())
}
