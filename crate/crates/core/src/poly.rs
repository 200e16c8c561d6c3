//! Sparse multivariate polynomials over ℚ(i) with graded reverse lexicographic
//! term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector. `Ord` is graded reverse lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `x_k^e` with `e > 0`, return `k`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (k, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(k);
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&o.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial in a fixed number of variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        Polynomial::term(Monomial::var(nvars, k), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Build from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in it {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    /// Common weighted degree of all terms, if homogeneous (and nonzero).
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The value if this is a constant polynomial (zero counts as constant).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, o: &Polynomial) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::RingMismatch(self.nvars, o.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        let mut r = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, k: usize) -> Result<Polynomial> {
        if k >= self.nvars {
            return Err(Error::IndexOutOfRange { index: k, nvars: self.nvars });
        }
        let mut r = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[k] -= 1;
            r.add_term(Monomial(exps), &(c * &Scalar::from_int(e as i64)));
        }
        Ok(r)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::RingMismatch(self.nvars, point.len()));
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Move into a ring with `nvars` variables, sending variable `k` to `map[k]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let mut r = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (k, &e) in m.0.iter().enumerate() {
                exps[map[k]] += e;
            }
            r.add_term(Monomial(exps), c);
        }
        r
    }

    /// Substitute polynomials for every variable.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        if subs.len() != self.nvars {
            return Err(Error::RingMismatch(self.nvars, subs.len()));
        }
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut r = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (s, &e) in subs.iter().zip(&m.0) {
                if e > 0 {
                    t = t.try_mul(&s.pow(e))?;
                }
            }
            r = r.try_add(&t)?;
        }
        Ok(r)
    }

    /// Divide by a monic-or-not single polynomial, returning `(quotient, remainder)`
    /// under the term order.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or_else(|| Error::Shape("division by zero".into()))?;
        let lc_inv = lc.inv().unwrap();
        let mut q = Polynomial::zero(self.nvars);
        let mut rem = Polynomial::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                p = p.try_sub(&divisor.mul_term(&qm, &qc))?;
                q.add_term(qm, &qc);
            } else {
                p.terms.remove(&m);
                rem.add_term(m, &c);
            }
        }
        Ok((q, rem))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.try_add(o).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.try_sub(o).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.try_mul(o).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

/// All monomials of exactly the given weighted degree, ascending.
pub fn monomials_of_degree(weights: &[u32], degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree >= 0 {
        let mut exps = vec![0u32; weights.len()];
        fill_monomials(weights, 0, degree as u64, &mut exps, &mut out);
    }
    out.sort();
    out
}

fn fill_monomials(weights: &[u32], k: usize, left: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if k == weights.len() {
        if left == 0 {
            out.push(Monomial::new(exps.clone()));
        }
        return;
    }
    let w = weights[k] as u64;
    for e in 0..=left / w {
        exps[k] = e as u32;
        fill_monomials(weights, k + 1, left - e * w, exps, out);
    }
    exps[k] = 0;
}

/// Variable names for printing and parsing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        Ring { vars: vars.into_iter().map(Into::into).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        crate::parse::parse_polynomial(src, &self.vars)
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        let k = self.vars.iter().position(|v| v == name)?;
        Some(Polynomial::var(self.nvars(), k))
    }

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: p }
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        let mut out = String::new();
        write_monomial(&mut out, &self.vars, m);
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

fn write_monomial(out: &mut String, vars: &[String], m: &Monomial) {
    let mut first = true;
    for (name, &e) in vars.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Canonical printing: terms in descending term order.
pub struct PolyDisplay<'a> {
    ring: &'a Ring,
    poly: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.poly.terms().rev().enumerate() {
            let neg = c.is_negative_display();
            let c = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = String::new();
            write_monomial(&mut mono, &self.ring.vars, m);
            if mono.is_empty() {
                out.push_str(&c.to_string());
            } else if c.is_one() {
                out.push_str(&mono);
            } else if c.is_compound() {
                out.push_str(&format!("({c})*{mono}"));
            } else {
                out.push_str(&format!("{c}*{mono}"));
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(["x", "y"])
    }

    #[test]
    fn grevlex_order() {
        let m = |a, b| Monomial::new(vec![a, b]);
        assert!(m(2, 0) > m(1, 1));
        assert!(m(1, 1) > m(0, 2));
        assert!(m(0, 3) > m(2, 0));
        let m3 = |a, b, c| Monomial::new(vec![a, b, c]);
        // x*z < y^2 in grevlex
        assert!(m3(1, 0, 1) < m3(0, 2, 0));
    }

    #[test]
    fn derivative_examples() {
        let r = ring();
        let d = |s: &str, k| r.parse(s).unwrap().partial_derivative(k).unwrap();
        assert_eq!(d("x^3", 0), r.parse("3*x^2").unwrap());
        assert!(Ring::new(["x", "y"]).parse("x").unwrap().partial_derivative(1).unwrap().is_zero());
        assert_eq!(d("x*y + x^2", 0), r.parse("y + 2*x").unwrap());
        assert!(matches!(
            r.parse("x").unwrap().partial_derivative(2),
            Err(Error::IndexOutOfRange { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let r = Ring::new(["x"]);
        let p = &r.parse("x+1").unwrap() * &r.parse("x-1").unwrap();
        assert_eq!(p, r.parse("x^2-1").unwrap());

        let r2 = ring();
        let v = r2.parse("x^2 + y").unwrap().evaluate(&[Scalar::one(), Scalar::i()]).unwrap();
        assert_eq!(v, Scalar::one() + Scalar::i());

        let q = r2.parse("3*x*y - 1/2*y^3 + i").unwrap();
        assert!((&q + &q.scale(&Scalar::from_int(-1))).is_zero());

        assert!(matches!(r.parse("x").unwrap().try_add(&r2.parse("x").unwrap()), Err(Error::RingMismatch(1, 2))));
    }

    #[test]
    fn printing_is_canonical() {
        let r = ring();
        let p = r.parse("y^2 - x*y + 3/2 + (1+i)*x^2 - i*x").unwrap();
        assert_eq!(r.display(&p).to_string(), "(1+i)*x^2 - x*y + y^2 - i*x + 3/2");
    }

    #[test]
    fn div_rem_exact() {
        let r = ring();
        let p = r.parse("x^3 - y^3").unwrap();
        let (q, rem) = p.div_rem(&r.parse("x - y").unwrap()).unwrap();
        assert!(rem.is_zero());
        assert_eq!(q, r.parse("x^2 + x*y + y^2").unwrap());
    }
}
