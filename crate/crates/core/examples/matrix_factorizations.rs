//! Build matrix factorizations, check D^2 = W, compute Hom cohomology and
//! compose morphism classes.
//!
//! `cargo run --example matrix_factorizations`

use lgtft::lg::LgPair;
use lgtft::matfact::{compose_classes, hom_cohomology, koszul_factorization, make_factorization};
use lgtft::polymatrix::PolyMatrix;

fn main() -> lgtft::Result<()> {
    let lg = LgPair::parse(&["x"], "x^5", None)?;
    let r = lg.ring();
    let a = koszul_factorization(&lg, &[(r.parse("x^2")?, r.parse("x^3")?)])?;
    let b = make_factorization(
        &lg,
        1,
        1,
        PolyMatrix::parse(r, &[vec!["x"]])?,
        PolyMatrix::parse(r, &[vec!["x^4"]])?,
    )?;
    println!("a: D^2 = W? {}  grading {:?}", a.squares_to_w(), a.grading());
    println!("b: D^2 = W? {}  grading {:?}", b.squares_to_w(), b.grading());

    for (name, s, t) in [("End(a)", &a, &a), ("Hom(a,b)", &a, &b), ("Hom(b,a)", &b, &a)] {
        let h = hom_cohomology(s, t, lgtft::matfact::default_degree_bound(s, t))?;
        println!("{name}: {}|{}  stabilized {}", h.dim_of(lgtft::graded::Parity::Even), h.dim_of(lgtft::graded::Parity::Odd), h.is_stabilized());
        for c in h.basis() {
            println!("  {:?} degree2 {:?}: {:?}", c.parity, c.degree, c.representative.to_strings(r));
        }
    }

    let ab = hom_cohomology(&a, &b, 8)?;
    let ba = hom_cohomology(&b, &a, 8)?;
    let aa = hom_cohomology(&a, &a, 8)?;
    for g in ba.basis() {
        for f in ab.basis() {
            let c = compose_classes(g, f)?;
            let coords = aa.class_coordinates(&c)?;
            let shown: Vec<String> = coords.iter().map(ToString::to_string).collect();
            println!("({:?} o {:?}) in End(a) basis: {shown:?}", g.parity, f.parity);
        }
    }

    match make_factorization(&lg, 1, 1, PolyMatrix::parse(r, &[vec!["x"]])?, PolyMatrix::parse(r, &[vec!["x^3"]])?) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("x * x^3 is not x^5"),
    }
    Ok(())
}
