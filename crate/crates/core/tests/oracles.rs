//! Library results against independent computations: residues by Laurent
//! expansion and by summing over Morse critical points, Milnor numbers by
//! staircase counting and the weight formula, Koszul and Hom dimensions by
//! raw coefficient ranks.

mod common;

use common::*;
use lgtft::graded::Parity;
use lgtft::jacobi::{milnor_number, residue_trace, JacobiAlgebra};
use lgtft::koszul::koszul_cohomology;
use lgtft::lg::LgPair;
use lgtft::matfact::{default_degree_bound, hom_cohomology};
use lgtft::poly::Polynomial;
use lgtft::scalar::Scalar;
use num_traits::Zero;

/// Coefficients of a one-variable polynomial, constant term first.
fn univariate(p: &Polynomial) -> Vec<Q> {
    let terms = rational_terms(p);
    let deg = terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut v = vec![q(0); deg + 1];
    for (e, c) in terms {
        v[e[0] as usize] = c;
    }
    v
}

/// Coefficient of `1/x` in the expansion of `p / W'` at infinity.
fn laurent_residue(p: &[Q], dw: &[Q]) -> Q {
    let mut r = p.to_vec();
    let n = dw.len() - 1;
    let lead = dw[n].clone();
    while r.len() > n {
        let top = r.len() - 1;
        let c = &r[top] / &lead;
        for (k, d) in dw.iter().enumerate() {
            r[top - n + k] -= &c * d;
        }
        r.pop();
    }
    if r.len() == n && n > 0 {
        &r[n - 1] / &lead
    } else {
        q(0)
    }
}

fn rational(s: &Scalar) -> Q {
    assert!(s.im().is_zero());
    s.re().clone()
}

#[test]
fn one_variable_residues_match_laurent_expansion() {
    for w in ["x^3-3*x", "x^4", "x^5-x", "x^4+2*x^3-x+7", "2*x^6+x^2"] {
        let lg = LgPair::parse(&["x"], w, None).unwrap();
        let alg = JacobiAlgebra::new(&lg).unwrap();
        let res = residue_trace(&alg).unwrap();
        let dw = univariate(&lg.partials()[0]);
        for k in 0..8 {
            let p = lg.ring().parse(&format!("x^{k}")).unwrap();
            let expected = laurent_residue(&univariate(&p), &dw);
            let got = rational(&alg.apply_functional(res.values(), &p).unwrap());
            assert_eq!(got, expected, "W = {w}, Res[x^{k}]");
        }
    }
}

#[test]
fn morse_residues_sum_over_critical_points() {
    // W = x^3 - 3x + y^3 - 3y: critical points (±1, ±1), hess = 36xy
    let lg = LgPair::parse(&["x", "y"], "x^3-3*x+y^3-3*y", None).unwrap();
    let alg = JacobiAlgebra::new(&lg).unwrap();
    assert_eq!(alg.dimension(), 4);
    let res = residue_trace(&alg).unwrap();
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (3, 2), (2, 2)] {
        let p = lg.ring().parse(&format!("x^{a}*y^{b}")).unwrap();
        let mut expected = q(0);
        for (x, y) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let value = q(x.pow(a)) * q(y.pow(b));
            expected += value / q(36 * x * y);
        }
        let got = rational(&alg.apply_functional(res.values(), &p).unwrap());
        assert_eq!(got, expected, "Res[x^{a} y^{b}]");
    }
}

#[test]
fn hessian_residue_is_milnor_number() {
    for (vars, w) in [
        (vec!["x"], "x^7"),
        (vec!["x", "y"], "x^3+y^3"),
        (vec!["x", "y"], "x^2*y+y^4"),
        (vec!["x", "y"], "x^3-3*x+y^4"),
        (vec!["x", "y", "z"], "x^2+y^3+z^3"),
    ] {
        let lg = LgPair::parse(&vars, w, None).unwrap();
        let alg = JacobiAlgebra::new(&lg).unwrap();
        let res = residue_trace(&alg).unwrap();
        let h = alg.apply_functional(res.values(), &lg.hessian()).unwrap();
        assert_eq!(h, Scalar::from_int(alg.dimension() as i64), "W = {w}");
    }
}

#[test]
fn milnor_numbers_by_staircase_and_weight_formula() {
    for (vars, w, weights) in [
        (vec!["x", "y"], "x^2*y+y^4", Some(vec![3, 2])),
        (vec!["x", "y"], "x^3+x*y^3", Some(vec![3, 2])),
        (vec!["x", "y"], "x^4+y^4", None),
        (vec!["x", "y", "z"], "x^2+y^3+z^5", Some(vec![15, 10, 6])),
        (vec!["x", "y", "z"], "x^3+y^3+z^3+x*y*z", None),
    ] {
        let lg = LgPair::parse(&vars, w, weights).unwrap();
        let mu = milnor_number(&lg).unwrap();
        assert_eq!(mu, staircase_milnor(&lg), "W = {w}");
        assert_eq!(q(mu as i64), weight_formula_milnor(&lg), "W = {w}");
    }
}

#[test]
fn koszul_dimensions_match_raw_ranks() {
    for (vars, w, weights, bound) in [
        (vec!["x"], "x^4", None, 12),
        (vec!["x", "y"], "x^2*y", None, 12),
        (vec!["x", "y"], "x^3+y^3", None, 12),
        (vec!["x", "y"], "x^2*y^2", None, 10),
        (vec!["x", "y"], "x^2*y+y^4", Some(vec![3, 2]), 14),
        (vec!["x", "y"], "x^3+x*y^3", Some(vec![3, 2]), 16),
        (vec!["x", "y", "z"], "x^2+y^2+z^2", None, 8),
        (vec!["x", "y", "z"], "x*y*z", None, 6),
    ] {
        let lg = LgPair::parse(&vars, w, weights).unwrap();
        let table = koszul_cohomology(&lg, bound).unwrap();
        for k in 0..=lg.dimension() {
            for m in 0..=bound {
                let got = table.dim(-(k as i64), m).unwrap_or(0);
                assert_eq!(got, koszul_dim_oracle(&lg, k, m), "W = {w}, H^-{k} in degree {m}");
            }
        }
    }
}

#[test]
fn hom_dimensions_match_raw_ranks_for_rank_one_branes() {
    for n in 2..=5u32 {
        let (_, branes) = xn_branes(n);
        for (_, a) in &branes {
            for (_, b) in &branes {
                let h = hom_cohomology(a, b, default_degree_bound(a, b)).unwrap();
                let (sa, sb) = (rank_one_of(a), rank_one_of(b));
                let (lo, hi) = h.window();
                for parity in [Parity::Even, Parity::Odd] {
                    for delta in lo - 4..=hi + 4 {
                        let got = h.piece_dims().iter().find(|(p, d, _)| *p == parity && *d == Some(delta)).map_or(0, |x| x.2);
                        let expected = hom_dim_oracle(sa, sb, parity, delta);
                        if delta <= hi {
                            assert_eq!(got, expected, "n = {n}, {parity:?} degree2 {delta}");
                        } else {
                            assert_eq!(expected, 0, "classes above the window");
                        }
                    }
                }
            }
        }
    }
}
