//! Parse polynomials over Q(i), multiply, differentiate and print them.
//!
//! `cargo run --example polynomials -- "x^2*y - (1/2+i)*y^3"`

use lgtft::poly::Ring;
use lgtft::scalar::Scalar;

fn main() -> lgtft::Result<()> {
    let src = std::env::args().nth(1).unwrap_or_else(|| "(x + i*y)^3 - 3/2*x*y".to_string());
    let ring = Ring::new(["x", "y"]);
    let p = ring.parse(&src)?;
    println!("p        = {}", ring.display(&p));
    println!("terms    = {}", p.num_terms());
    println!("degree   = {:?}", p.degree());
    println!("dp/dx    = {}", ring.display(&p.partial_derivative(0)?));
    println!("dp/dy    = {}", ring.display(&p.partial_derivative(1)?));
    let q = ring.parse("x - i*y")?;
    println!("p*(x-iy) = {}", ring.display(&p.try_mul(&q)?));
    let at = [Scalar::one(), Scalar::i()];
    println!("p(1, i)  = {}", p.evaluate(&at)?);
    match ring.parse("x^2 + z") {
        Err(e) => println!("x^2 + z  -> {e}"),
        Ok(_) => unreachable!("z is not a variable"),
    }
    Ok(())
}
