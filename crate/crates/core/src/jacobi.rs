//! The Jacobi algebra `ℂ[x]/(∂₁W, …, ∂_dW)`, its Milnor number, and the
//! Grothendieck residue trace on it.

use std::collections::HashMap;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis, MONOMIAL_ORDER};
use crate::lg::{determinant, LgPair};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// Persistent storage for Gröbner bases. Implementations must be safe to share
/// between threads; correctness never depends on a hit.
pub trait GroebnerStore: Send + Sync {
    fn load(&self, key: &str) -> Option<Vec<Polynomial>>;
    fn store(&self, key: &str, basis: &GroebnerBasis);
}

/// Content hash of `(ring, generators, order)`.
pub fn groebner_cache_key(generators: &[Polynomial]) -> String {
    let nvars = generators.first().map_or(0, Polynomial::nvars);
    let names: Vec<String> = (0..nvars).map(|k| format!("v{k}")).collect();
    let ring = crate::poly::Ring::new(names);
    let mut h = Sha256::new();
    h.update(format!("{MONOMIAL_ORDER};{nvars}"));
    for g in generators {
        h.update(";");
        h.update(ring.display(g).to_string());
    }
    hex::encode(h.finalize())
}

/// Gröbner basis through an optional store. Stored bases are re-verified
/// (reducedness, Buchberger criterion, and membership of every input
/// generator) before use; anything that fails is recomputed and overwritten.
pub fn groebner_basis_cached(generators: &[Polynomial], store: Option<&dyn GroebnerStore>) -> Result<GroebnerBasis> {
    let Some(store) = store else {
        return groebner_basis(generators);
    };
    let key = groebner_cache_key(generators);
    if let Some(stored) = store.load(&key) {
        let nvars = generators.first().map_or(0, Polynomial::nvars);
        if let Ok(gb) = GroebnerBasis::from_verified(nvars, stored) {
            if generators.iter().all(|g| gb.contains(g).unwrap_or(false)) {
                return Ok(gb);
            }
        }
    }
    let gb = groebner_basis(generators)?;
    store.store(&key, &gb);
    Ok(gb)
}

/// Gröbner basis of the Jacobi ideal.
pub fn jacobi_ideal(lg: &LgPair, store: Option<&dyn GroebnerStore>) -> Result<GroebnerBasis> {
    groebner_basis_cached(&lg.partials(), store)
}

/// Standard monomials of `gb` in ascending term order, or `None` when there
/// are infinitely many.
pub fn standard_monomials(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let n = gb.nvars();
    if gb.is_unit_ideal() {
        return Some(Vec::new());
    }
    let mut bounds = vec![None; n];
    for lm in gb.leading_monomials() {
        if let Some(k) = lm.pure_power_var() {
            let e = lm.exponents()[k];
            bounds[k] = Some(bounds[k].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>()?;
    let lms: Vec<&Monomial> = gb.leading_monomials().collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::new(exps.clone());
        if !lms.iter().any(|lm| lm.divides(&m)) {
            out.push(m);
        }
        // odometer over the box bounded by the pure powers
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return Some(out);
            }
            exps[k] += 1;
            if exps[k] < bounds[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

pub fn is_critical_set_finite(lg: &LgPair) -> bool {
    jacobi_ideal(lg, None).map(|gb| standard_monomials(&gb).is_some()).unwrap_or(false)
}

pub fn milnor_number(lg: &LgPair) -> Result<usize> {
    Ok(JacobiAlgebra::new(lg)?.dimension())
}

/// Finite-dimensional Jacobi algebra with a monomial basis and structure constants.
#[derive(Clone, Debug)]
pub struct JacobiAlgebra {
    lg: LgPair,
    ideal: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    table: Vec<Vec<Vec<Scalar>>>,
}

impl JacobiAlgebra {
    pub fn new(lg: &LgPair) -> Result<Self> {
        Self::with_store(lg, None)
    }

    pub fn with_store(lg: &LgPair, store: Option<&dyn GroebnerStore>) -> Result<Self> {
        let ideal = jacobi_ideal(lg, store)?;
        let basis = standard_monomials(&ideal).ok_or(Error::NonFiniteCriticalSet)?;
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut alg = JacobiAlgebra { lg: lg.clone(), ideal, basis, index, table: Vec::new() };
        let mu = alg.basis.len();
        let mut table = vec![vec![Vec::new(); mu]; mu];
        for u in 0..mu {
            for v in 0..mu {
                let prod = Polynomial::term(alg.basis[u].mul(&alg.basis[v]), Scalar::one());
                table[u][v] = alg.coordinates(&prod)?;
            }
        }
        alg.table = table;
        Ok(alg)
    }

    pub fn lg(&self) -> &LgPair {
        &self.lg
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    /// Milnor number.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.basis.iter().map(|m| self.lg.ring().monomial_string(m)).collect()
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.index.get(&Monomial::one(self.lg.dimension())).copied()
    }

    /// Structure constants: `e_u * e_v = Σ_k table[u][v][k] e_k`.
    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ideal.normal_form(p)
    }

    /// Coordinates of the class of `p` in the standard monomial basis.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Scalar>> {
        let nf = self.normal_form(p)?;
        let mut v = vec![Scalar::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    pub fn to_polynomial(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            self.lg.dimension(),
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mu = self.dimension();
        let mut out = vec![Scalar::zero(); mu];
        for (u, au) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (v, bv) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = au * bv;
                for (k, t) in self.table[u][v].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dimension()];
        if let Some(u) = self.unit_index() {
            v[u] = Scalar::one();
        }
        v
    }

    pub fn is_commutative(&self) -> bool {
        let mu = self.dimension();
        (0..mu).all(|u| (0..mu).all(|v| self.table[u][v] == self.table[v][u]))
    }

    pub fn is_associative(&self) -> bool {
        let mu = self.dimension();
        let e = |i: usize| {
            let mut v = vec![Scalar::zero(); mu];
            v[i] = Scalar::one();
            v
        };
        (0..mu).all(|a| {
            (0..mu).all(|b| {
                (0..mu).all(|c| {
                    let ab = self.multiply(&e(a), &e(b));
                    let bc = self.multiply(&e(b), &e(c));
                    self.multiply(&ab, &e(c)) == self.multiply(&e(a), &bc)
                })
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        let Some(u) = self.unit_index() else { return self.dimension() == 0 };
        let mu = self.dimension();
        (0..mu).all(|v| {
            let mut ev = vec![Scalar::zero(); mu];
            ev[v] = Scalar::one();
            self.table[u][v] == ev
        })
    }

    /// Residue values `Res(e_k)` for the basis, normalized so that
    /// `Res(hess W) = μ`. Uses the socle route when `W` is quasi-homogeneous
    /// and the Bezoutian route otherwise.
    pub fn residue_functional(&self) -> Result<Vec<Scalar>> {
        if self.dimension() == 0 {
            return Err(Error::ZeroAlgebra);
        }
        if self.lg.quasi_homogeneity().is_some() {
            self.residue_by_socle()
        } else {
            self.residue_by_bezoutian()
        }
    }

    /// Graded route: the residue is supported on the top weighted degree, which
    /// is spanned by the Hessian class.
    pub fn residue_by_socle(&self) -> Result<Vec<Scalar>> {
        let mu = self.dimension();
        if mu == 0 {
            return Err(Error::ZeroAlgebra);
        }
        let qh = self
            .lg
            .quasi_homogeneity()
            .ok_or_else(|| Error::DegeneratePairing("socle route needs a quasi-homogeneous W".into()))?;
        let top = self.basis.iter().map(|m| m.weighted_degree(&qh.weights)).max().unwrap();
        let tops: Vec<usize> = (0..mu).filter(|&k| self.basis[k].weighted_degree(&qh.weights) == top).collect();
        if tops.len() != 1 {
            return Err(Error::DegeneratePairing(format!("top degree piece has dimension {}", tops.len())));
        }
        let hess = self.coordinates(&self.lg.hessian())?;
        let h_top = &hess[tops[0]];
        if h_top.is_zero() {
            return Err(Error::DegeneratePairing("Hessian class vanishes".into()));
        }
        let mut res = vec![Scalar::zero(); mu];
        res[tops[0]] = &Scalar::from_int(mu as i64) / h_top;
        Ok(res)
    }

    /// General route through the Bezoutian of `(∂₁W, …, ∂_dW)`, which represents
    /// the dual basis of the residue pairing in `Jac ⊗ Jac`.
    pub fn residue_by_bezoutian(&self) -> Result<Vec<Scalar>> {
        let mu = self.dimension();
        if mu == 0 {
            return Err(Error::ZeroAlgebra);
        }
        let d = self.lg.dimension();
        let n2 = 2 * d;
        let partials = self.lg.partials();
        let mut entries = Vec::with_capacity(d * d);
        for f in &partials {
            for j in 0..d {
                let before: Vec<usize> = (0..d).map(|k| if k < j { d + k } else { k }).collect();
                let after: Vec<usize> = (0..d).map(|k| if k <= j { d + k } else { k }).collect();
                let diff = &f.remap(n2, &before) - &f.remap(n2, &after);
                let lin = &Polynomial::var(n2, j) - &Polynomial::var(n2, d + j);
                let (q, r) = diff.div_rem(&lin)?;
                debug_assert!(r.is_zero());
                entries.push(q);
            }
        }
        let bez = determinant(d, &entries, n2);
        let x_map: Vec<usize> = (0..d).collect();
        let y_map: Vec<usize> = (d..n2).collect();
        let mut gens: Vec<Polynomial> = self.ideal.generators().iter().map(|g| g.remap(n2, &x_map)).collect();
        gens.extend(self.ideal.generators().iter().map(|g| g.remap(n2, &y_map)));
        let both = groebner_basis(&gens)?;
        let nf = both.normal_form(&bez)?;
        let mut c = Matrix::zeros(mu, mu);
        for (m, coeff) in nf.terms() {
            let e = m.exponents();
            let a = Monomial::new(e[..d].to_vec());
            let b = Monomial::new(e[d..].to_vec());
            c[(self.index[&a], self.index[&b])] = coeff.clone();
        }
        let r = c.inverse().ok_or_else(|| Error::DegeneratePairing("Bezoutian matrix is singular".into()))?;
        let u = self.unit_index().ok_or(Error::ZeroAlgebra)?;
        Ok(r.row(u).to_vec())
    }

    /// Residue of an arbitrary polynomial through a precomputed functional.
    pub fn apply_functional(&self, functional: &[Scalar], p: &Polynomial) -> Result<Scalar> {
        let v = self.coordinates(p)?;
        Ok(dot(functional, &v))
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// The bulk trace `Tr = scale · Res` on the Jacobi algebra.
#[derive(Clone, Debug)]
pub struct ResidueTrace {
    values: Vec<Scalar>,
    scale: Scalar,
}

impl ResidueTrace {
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    pub fn apply(&self, v: &[Scalar]) -> Scalar {
        dot(&self.values, v)
    }

    /// `G[u][v] = Tr(e_u e_v)`.
    pub fn gram(&self, alg: &JacobiAlgebra) -> Matrix {
        let mu = alg.dimension();
        let mut g = Matrix::zeros(mu, mu);
        for u in 0..mu {
            for v in 0..mu {
                g[(u, v)] = self.apply(&alg.table()[u][v]);
            }
        }
        g
    }
}

/// Residue trace with the default normalization `Tr([hess W]) = μ`.
pub fn residue_trace(alg: &JacobiAlgebra) -> Result<ResidueTrace> {
    residue_trace_scaled(alg, Scalar::one())
}

/// Residue trace scaled so that `Tr([hess W]) = scale · μ`. Fails when the
/// resulting Gram matrix is degenerate.
pub fn residue_trace_scaled(alg: &JacobiAlgebra, scale: Scalar) -> Result<ResidueTrace> {
    let res = alg.residue_functional()?;
    let values = res.iter().map(|r| r * &scale).collect();
    let tr = ResidueTrace { values, scale };
    if tr.gram(alg).inverse().is_none() {
        return Err(Error::DegeneratePairing("bulk trace pairing is degenerate".into()));
    }
    Ok(tr)
}
