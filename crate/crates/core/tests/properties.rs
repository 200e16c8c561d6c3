//! Randomized invariants. Each property draws a seed and builds its
//! instance from the shared generators, so failures shrink to a seed.

mod common;

use common::*;
use lgtft::graded::Parity;
use lgtft::jacobi::JacobiAlgebra;
use lgtft::lg::LgPair;
use lgtft::poly::Ring;
use lgtft::scalar::Scalar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, ..ProptestConfig::default() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn scalar_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_scalar(&mut r), random_scalar(&mut r), random_scalar(&mut r));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Scalar::one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(Scalar::parse(&a.to_string()), Some(a.clone()));
    }

    #[test]
    fn polynomial_ring_laws_and_text_roundtrip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = Ring::new(["x", "y"]);
        let (p, q, s) = (random_poly(&mut r, 2, 4, 4), random_poly(&mut r, 2, 4, 4), random_poly(&mut r, 2, 3, 3));
        prop_assert_eq!(p.try_mul(&q).unwrap(), q.try_mul(&p).unwrap());
        let lhs = p.try_mul(&q.try_add(&s).unwrap()).unwrap();
        let rhs = p.try_mul(&q).unwrap().try_add(&p.try_mul(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let d = p.try_mul(&q).unwrap().partial_derivative(0).unwrap();
        let leibniz = p.partial_derivative(0).unwrap().try_mul(&q).unwrap()
            .try_add(&p.try_mul(&q.partial_derivative(0).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(d, leibniz);
        let text = ring.display(&p).to_string();
        prop_assert_eq!(ring.parse(&text).unwrap(), p);
    }

    #[test]
    fn jacobi_normal_forms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ws = ["x^3+y^3", "x^2*y+y^4", "x^3-3*x+y^2", "x^4+y^3+x*y"];
        let lg = LgPair::parse(&["x", "y"], ws[r.gen_range(0..ws.len())], None).unwrap();
        let alg = JacobiAlgebra::new(&lg).unwrap();
        let p = random_poly(&mut r, 2, 5, 4);
        let nf = alg.normal_form(&p).unwrap();
        prop_assert_eq!(alg.normal_form(&nf).unwrap(), nf.clone());
        for dw in lg.partials() {
            let g = random_poly(&mut r, 2, 3, 3);
            let shifted = p.try_add(&g.try_mul(&dw).unwrap()).unwrap();
            prop_assert_eq!(alg.normal_form(&shifted).unwrap(), nf.clone());
        }
        let q = random_poly(&mut r, 2, 4, 3);
        let prod = alg.coordinates(&p.try_mul(&q).unwrap()).unwrap();
        let via = alg.multiply(&alg.coordinates(&p).unwrap(), &alg.coordinates(&q).unwrap());
        prop_assert_eq!(prod, via);
    }

    #[test]
    fn factorizations_square_to_w(seed in any::<u64>()) {
        prop_assert_eq!(check_d_squared_is_w(seed), Ok(()));
    }

    #[test]
    fn hom_differential_squares_to_zero(seed in any::<u64>()) {
        prop_assert_eq!(check_hom_d_squared(seed), Ok(()));
    }

    #[test]
    fn hom_differential_is_a_derivation(seed in any::<u64>()) {
        prop_assert_eq!(check_leibniz(seed), Ok(()));
    }

    #[test]
    fn class_coordinates_ignore_coboundaries(seed in any::<u64>()) {
        prop_assert_eq!(check_representative_independence(seed), Ok(()));
    }

    #[test]
    fn composition_is_well_defined_on_classes(seed in any::<u64>()) {
        prop_assert!(check_composition_on_classes(seed).is_ok());
    }
}

#[test]
fn parity_addition_matches_integers() {
    for a in -3i64..3 {
        for b in -3i64..3 {
            assert_eq!(Parity::of(a) + Parity::of(b), Parity::of(a + b));
        }
    }
}
