//! Buchberger's algorithm over ℚ(i) in graded reverse lexicographic order.

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// A reduced, monic Gröbner basis (graded reverse lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    generators: Vec<Polynomial>,
}

pub const MONOMIAL_ORDER: &str = "grevlex";

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &'static str {
        MONOMIAL_ORDER
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.generators.iter().filter_map(Polynomial::leading_monomial)
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.leading_monomials().any(Monomial::is_one)
    }

    /// Reassemble from stored generators (e.g. a cache), re-checking that they
    /// form a reduced monic Gröbner basis.
    pub fn from_verified(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.nvars() != nvars || g.is_zero()) {
            return Err(Error::Shape("Gröbner basis generators in the wrong ring".into()));
        }
        let mut gb = GroebnerBasis { nvars, generators };
        gb.sort();
        if !gb.satisfies_buchberger_criterion() || !gb.is_reduced() {
            return Err(Error::Shape("stored generators are not a reduced Gröbner basis".into()));
        }
        Ok(gb)
    }

    fn sort(&mut self) {
        self.generators.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.nvars {
            return Err(Error::RingMismatch(self.nvars, p.nvars()));
        }
        Ok(reduce(p, &self.generators))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !reduce(&s_polynomial(&g[i], &g[j]), g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Monic, and no term of any generator is divisible by another leading monomial.
    pub fn is_reduced(&self) -> bool {
        let g = &self.generators;
        g.iter().enumerate().all(|(i, p)| {
            p.leading_coefficient().is_some_and(Scalar::is_one)
                && p.terms().all(|(m, _)| {
                    g.iter().enumerate().all(|(j, q)| j == i || !q.leading_monomial().unwrap().divides(m))
                })
        })
    }
}

/// Full reduction of `p` modulo `divisors`.
fn reduce(p: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let nvars = p.nvars();
    let mut rem = Polynomial::zero(nvars);
    let mut p = p.clone();
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = divisors.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match hit {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let q = lm.quotient_of(&m);
                let f = &c / lc;
                p = &p - &g.mul_term(&q, &f);
            }
            None => {
                p.add_term(m.clone(), &-&c);
                rem.add_term(m, &c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &fc.inv().unwrap());
    let b = g.mul_term(&gm.quotient_of(&l), &gc.inv().unwrap());
    &a - &b
}

fn monic(p: &Polynomial) -> Polynomial {
    match p.leading_coefficient() {
        Some(c) => p.scale(&c.inv().unwrap()),
        None => p.clone(),
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
///
/// Pairs are processed by smallest lcm first; the coprime-leading-monomial
/// criterion and the chain criterion skip pairs known to reduce to zero.
pub fn groebner_basis(generators: &[Polynomial]) -> Result<GroebnerBasis> {
    let nvars = generators.first().map(Polynomial::nvars).ok_or_else(|| Error::Shape("no generators".into()))?;
    if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::RingMismatch(nvars, g.nvars()));
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for g in generators {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            add_generator(&mut basis, &mut pairs, monic(&r));
        }
    }
    while let Some(idx) = select_pair(&basis, &pairs) {
        let (i, j) = pairs.swap_remove(idx);
        let (mi, mj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if mi.is_coprime(mj) || chain_criterion(&basis, &pairs, i, j) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            add_generator(&mut basis, &mut pairs, monic(&r));
        }
    }
    let mut gb = GroebnerBasis { nvars, generators: interreduce(basis) };
    gb.sort();
    debug_assert!(gb.is_reduced());
    assert!(gb.satisfies_buchberger_criterion(), "Buchberger criterion failed");
    Ok(gb)
}

fn add_generator(basis: &mut Vec<Polynomial>, pairs: &mut Vec<(usize, usize)>, g: Polynomial) {
    let k = basis.len();
    basis.push(g);
    pairs.extend((0..k).map(|i| (i, k)));
}

fn select_pair(basis: &[Polynomial], pairs: &[(usize, usize)]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let la = basis[a.0].leading_monomial().unwrap().lcm(basis[a.1].leading_monomial().unwrap());
            let lb = basis[b.0].leading_monomial().unwrap().lcm(basis[b.1].leading_monomial().unwrap());
            la.cmp(&lb).then(a.cmp(b))
        })
        .map(|(i, _)| i)
}

/// Skip (i, j) if some k has LM(k) | lcm(i, j) and both (i, k), (j, k) were already treated.
fn chain_criterion(basis: &[Polynomial], pending: &[(usize, usize)], i: usize, j: usize) -> bool {
    let lij = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
    let is_pending = |a: usize, b: usize| pending.contains(&(a.min(b), a.max(b)));
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].leading_monomial().unwrap().divides(&lij)
            && !is_pending(i, k)
            && !is_pending(j, k)
    })
}

fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop generators whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading_monomial().unwrap();
            j != i && hm.divides(lm) && (hm != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let g = &minimal[i];
            let (lm, lc) = g.leading_term().unwrap();
            let tail = &g.clone() - &Polynomial::term(lm.clone(), lc.clone());
            let reduced = &Polynomial::term(lm.clone(), lc.clone()) + &reduce(&tail, &others);
            monic(&reduced)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn gb(ring: &Ring, gens: &[&str]) -> GroebnerBasis {
        let ps: Vec<_> = gens.iter().map(|s| ring.parse(s).unwrap()).collect();
        groebner_basis(&ps).unwrap()
    }

    fn show(ring: &Ring, g: &GroebnerBasis) -> Vec<String> {
        g.generators().iter().map(|p| ring.display(p).to_string()).collect()
    }

    #[test]
    fn principal_ideal_is_made_monic() {
        let r = Ring::new(["x"]);
        assert_eq!(show(&r, &gb(&r, &["3*x^2"])), vec!["x^2"]);
    }

    #[test]
    fn already_reduced() {
        let r = Ring::new(["x", "y"]);
        assert_eq!(show(&r, &gb(&r, &["x", "y"])), vec!["y", "x"]);
    }

    #[test]
    fn partials_of_x2y() {
        // (2xy, x^2): x*(2xy) - 2y*(x^2) = 0, so the basis is {x*y, x^2} and the
        // staircase is {1, x, y, y^2, ...}: infinite in y.
        let r = Ring::new(["x", "y"]);
        let g = gb(&r, &["2*x*y", "x^2"]);
        assert_eq!(show(&r, &g), vec!["x*y", "x^2"]);
    }

    #[test]
    fn nontrivial_buchberger_run() {
        // y^2 - x, x*y - 1 generate an ideal with a cubic in grevlex
        let r = Ring::new(["x", "y"]);
        let g = gb(&r, &["y^2 - x", "x*y - 1"]);
        assert!(g.satisfies_buchberger_criterion());
        assert!(g.is_reduced());
        assert!(g.contains(&r.parse("x^3 - 1").unwrap()).unwrap());
        assert!(g.contains(&r.parse("y^3 - 1").unwrap()).unwrap());
        assert!(!g.contains(&r.parse("y - 1").unwrap()).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let r = Ring::new(["x"]);
        let g = gb(&r, &["x^2"]);
        let nf = |s: &str| r.display(&g.normal_form(&r.parse(s).unwrap()).unwrap()).to_string();
        assert_eq!(nf("x^3"), "0");
        assert_eq!(nf("x+1"), "x + 1");
        assert_eq!(nf("x^2+x"), "x");
        let r2 = Ring::new(["x", "y"]);
        assert!(matches!(g.normal_form(&r2.parse("x").unwrap()), Err(Error::RingMismatch(1, 2))));
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::new(["x", "y"]);
        let g = gb(&r, &["x*y - 1", "x"]);
        assert!(g.is_unit_ideal());
        assert_eq!(show(&r, &g), vec!["1"]);
    }

    #[test]
    fn from_verified_rejects_non_basis() {
        let r = Ring::new(["x", "y"]);
        let bad = vec![r.parse("x^2 - y").unwrap(), r.parse("x*y - 1").unwrap()];
        assert!(GroebnerBasis::from_verified(2, bad).is_err());
        let good = gb(&r, &["x^2 - y", "x*y - 1"]);
        assert_eq!(GroebnerBasis::from_verified(2, good.generators().to_vec()).unwrap(), good);
    }
}
