//! Degreewise cohomology of morphism complexes.
//!
//! When `W` is quasi-homogeneous and both factorizations are homogeneous, the
//! morphism complex splits into finite pieces indexed by parity and doubled
//! internal degree `δ`: the component `e_j ↦ x^α e'_i` has
//! `δ = 2·deg_w(x^α) + q'_i - q_j`, and `d` maps `(κ, δ)` to `(κ+1, δ+N)`.
//! Everything within the window is exact.
//!
//! Otherwise morphisms are filtered by the total degree `m` of their entries.
//! Stage `m` reports `Z_m / B_m` with `Z_m` the cocycles in `F_m` and `B_m`
//! the part of `d(F_{m+Δ})` lying in `F_m`, `Δ` the largest entry degree of
//! the two differentials. This is a heuristic window, flagged as such.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graded::{GradedVectorSpace, Parity};
use crate::jacobi::JacobiAlgebra;
use crate::linalg::{sparse_kernel, Echelon, SparseVec};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;

use super::factorization::MatrixFactorization;
use super::hom::{hom_complex, HomComplex};

/// A cohomology class of morphisms, represented by a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub parity: Parity,
    /// Doubled internal degree, for homogeneous representatives.
    pub degree: Option<i64>,
    pub representative: PolyMatrix,
}

impl MorphismClass {
    /// Wrap a cocycle; fails if `f` is not a cocycle of the given parity.
    pub fn from_cocycle(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: Parity,
        f: PolyMatrix,
    ) -> Result<MorphismClass> {
        let hc = hom_complex(source, target)?;
        if !hc.is_cocycle(&f, parity)? {
            return Err(Error::NotACocycle);
        }
        let degree = homogeneous_degree(source, target, &f);
        Ok(MorphismClass { source: source.clone(), target: target.clone(), parity, degree, representative: f })
    }

    pub fn identity(a: &MatrixFactorization) -> MorphismClass {
        let f = PolyMatrix::identity(a.size(), a.lg().dimension());
        let degree = a.grading().map(|_| 0);
        MorphismClass { source: a.clone(), target: a.clone(), parity: Parity::Even, degree, representative: f }
    }

    /// The two possibly nonzero blocks: `(P⁰₁ → P^κ₂, P¹₁ → P^{κ+1}₂)`.
    pub fn blocks(&self) -> (PolyMatrix, PolyMatrix) {
        let (r0s, r1s) = (self.source.rank0(), self.source.rank1());
        let (r0t, r1t) = (self.target.rank0(), self.target.rank1());
        let f = &self.representative;
        match self.parity {
            Parity::Even => (f.block(0, 0, r0t, r0s), f.block(r0t, r0s, r1t, r1s)),
            Parity::Odd => (f.block(r0t, 0, r1t, r0s), f.block(0, r0s, r0t, r1s)),
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.representative.is_zero()
    }
}

fn doubled_degree(q1: &[i64], q2: &[i64], weights: &[u32], i: usize, j: usize, m: &Monomial) -> i64 {
    2 * m.weighted_degree(weights) as i64 + q2[i] - q1[j]
}

fn homogeneous_degree(source: &MatrixFactorization, target: &MatrixFactorization, f: &PolyMatrix) -> Option<i64> {
    let qh = source.lg().quasi_homogeneity()?;
    let (q1, q2) = (source.grading()?, target.grading()?);
    let mut deg = None;
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            for (m, _) in f.get(i, j).terms() {
                let d = doubled_degree(q1, q2, &qh.weights, i, j, m);
                if deg.is_some_and(|e| e != d) {
                    return None;
                }
                deg = Some(d);
            }
        }
    }
    deg
}

/// `g ∘ f` on cohomology, represented by the matrix product.
pub fn compose_classes(g: &MorphismClass, f: &MorphismClass) -> Result<MorphismClass> {
    if g.source != f.target {
        return Err(Error::ObjectMismatch("target of f differs from source of g".into()));
    }
    let hf = hom_complex(&f.source, &f.target)?;
    let hg = hom_complex(&g.source, &g.target)?;
    if !hf.is_cocycle(&f.representative, f.parity)? || !hg.is_cocycle(&g.representative, g.parity)? {
        return Err(Error::NotACocycle);
    }
    let rep = g.representative.mul(&f.representative)?;
    let degree = match (g.degree, f.degree) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    Ok(MorphismClass { source: f.source.clone(), target: g.target.clone(), parity: g.parity + f.parity, degree, representative: rep })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Grading {
    Graded { weights: Vec<u32>, n: i64, q1: Vec<i64>, q2: Vec<i64> },
    Filtered { delta: i64 },
}

/// Basis of a finite piece: `(row, column, monomial)` triples.
#[derive(Clone, Debug)]
struct Piece {
    elems: Vec<(usize, usize, Monomial)>,
    index: HashMap<(usize, usize, Monomial), usize>,
}

impl Piece {
    fn new(elems: Vec<(usize, usize, Monomial)>) -> Piece {
        let index = elems.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        Piece { elems, index }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }
}

#[derive(Clone, Debug)]
struct Solver {
    piece: Piece,
    echelon: Echelon,
    reps: Vec<(usize, SparseVec)>,
}

/// Morphism cohomology `H(Hom(a1, a2))` with a chosen basis of classes.
#[derive(Clone, Debug)]
pub struct HomCohomology {
    complex: HomComplex,
    grading: Grading,
    degree_bound: i64,
    window: (i64, i64),
    stabilized: bool,
    classes: Vec<MorphismClass>,
    space: GradedVectorSpace,
    solvers: BTreeMap<(u8, i64), Solver>,
}

/// Top weighted degree of the Jacobi staircase plus the largest entry degree
/// of either differential, plus 2. Total degrees are used when the pair is
/// not graded.
pub fn default_degree_bound(a1: &MatrixFactorization, a2: &MatrixFactorization) -> i64 {
    let lg = a1.lg();
    let weights = match (lg.quasi_homogeneity(), a1.grading(), a2.grading()) {
        (Some(qh), Some(_), Some(_)) => qh.weights,
        _ => vec![1; lg.dimension()],
    };
    let top = JacobiAlgebra::new(lg)
        .map(|alg| alg.basis().iter().map(|m| m.weighted_degree(&weights)).max().unwrap_or(0))
        .unwrap_or(0);
    let entries = a1.max_entry_weighted_degree(&weights).max(a2.max_entry_weighted_degree(&weights));
    (top + entries + 2) as i64
}

pub fn hom_cohomology(a1: &MatrixFactorization, a2: &MatrixFactorization, degree_bound: i64) -> Result<HomCohomology> {
    if degree_bound < 0 {
        return Err(Error::NegativeBound(degree_bound));
    }
    let complex = hom_complex(a1, a2)?;
    let lg = a1.lg();
    let grading = match (lg.quasi_homogeneity(), a1.grading(), a2.grading()) {
        (Some(qh), Some(q1), Some(q2)) => {
            Grading::Graded { weights: qh.weights, n: qh.degree as i64, q1: q1.to_vec(), q2: q2.to_vec() }
        }
        _ => Grading::Filtered { delta: a1.max_entry_degree().max(a2.max_entry_degree()) as i64 },
    };
    let mut hc = HomCohomology {
        complex,
        grading,
        degree_bound,
        window: (0, degree_bound),
        stabilized: false,
        classes: Vec::new(),
        space: GradedVectorSpace::new(),
        solvers: BTreeMap::new(),
    };
    hc.build();
    Ok(hc)
}

impl HomCohomology {
    fn build(&mut self) {
        let keys: Vec<i64> = match &self.grading {
            Grading::Graded { q1, q2, .. } => {
                let offsets: Vec<i64> = q2.iter().flat_map(|a| q1.iter().map(move |b| a - b)).collect();
                let lo = offsets.iter().copied().min().unwrap_or(0);
                let hi = 2 * self.degree_bound + offsets.iter().copied().max().unwrap_or(0);
                self.window = (lo, hi);
                (lo..=hi).collect()
            }
            Grading::Filtered { .. } => vec![self.degree_bound],
        };
        let mut label = 0;
        for parity in [Parity::Even, Parity::Odd] {
            for &key in &keys {
                let solver = self.solve(parity, key, label, &[]);
                if solver.reps.is_empty() {
                    continue;
                }
                let mut names = Vec::new();
                for (g, v) in &solver.reps {
                    let f = self.matrix_of(&solver.piece, v);
                    let degree = match self.grading {
                        Grading::Graded { .. } => Some(key),
                        Grading::Filtered { .. } => None,
                    };
                    self.classes.push(MorphismClass {
                        source: self.complex.source().clone(),
                        target: self.complex.target().clone(),
                        parity,
                        degree,
                        representative: f,
                    });
                    names.push(format!("t{g}"));
                }
                label += solver.reps.len();
                let degree = matches!(self.grading, Grading::Graded { .. }).then_some(key);
                self.space.push_piece(parity, degree, names).expect("fresh labels");
                self.solvers.insert((parity.bit(), key), solver);
            }
        }
        self.stabilized = match self.grading {
            Grading::Graded { .. } => {
                let hi = self.window.1;
                [Parity::Even, Parity::Odd]
                    .iter()
                    .all(|&p| (hi + 1..=hi + 4).all(|k| self.solve(p, k, 0, &[]).reps.is_empty()))
            }
            Grading::Filtered { .. } => {
                let b = self.degree_bound;
                let count = |m: i64, p: Parity| if m < 0 { usize::MAX } else { self.solve(p, m, 0, &[]).reps.len() };
                [Parity::Even, Parity::Odd].iter().all(|&p| {
                    let top = self.dim_of(p);
                    count(b - 1, p) == top && count(b - 2, p) == top
                })
            }
        };
    }

    fn piece(&self, parity: Parity, key: i64) -> Piece {
        let slots = self.complex.slots(parity);
        let mut elems = Vec::new();
        match &self.grading {
            Grading::Graded { weights, q1, q2, .. } => {
                for (i, j) in slots {
                    let t = key - q2[i] + q1[j];
                    if t >= 0 && t % 2 == 0 {
                        elems.extend(monomials_of_degree(weights, t / 2).into_iter().map(|m| (i, j, m)));
                    }
                }
            }
            Grading::Filtered { .. } => {
                let ones = vec![1; self.complex.source().lg().dimension()];
                for e in 0..=key {
                    let monos = monomials_of_degree(&ones, e);
                    for &(i, j) in &slots {
                        elems.extend(monos.iter().map(|m| (i, j, m.clone())));
                    }
                }
            }
        }
        Piece::new(elems)
    }

    /// Images of the basis of `domain` under `d`, in coordinates of `codomain`.
    fn d_columns(&self, parity: Parity, domain: &Piece, codomain: &Piece) -> Vec<SparseVec> {
        let d1 = self.complex.source().differential();
        let d2 = self.complex.target().differential();
        let sign = match parity {
            Parity::Even => Scalar::from_int(-1),
            Parity::Odd => Scalar::one(),
        };
        domain
            .elems
            .iter()
            .map(|(i, j, mono)| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                let mut push = |r: usize, c: usize, p: &Polynomial, s: &Scalar| {
                    for (m, x) in p.terms() {
                        let key = (r, c, m.mul(mono));
                        let k = *codomain.index.get(&key).expect("differential leaves the codomain piece");
                        let e = acc.entry(k).or_default();
                        *e += &(x * s);
                    }
                };
                // D₂ E_ij: column j receives column i of D₂
                for r in 0..d2.rows() {
                    push(r, *j, d2.get(r, *i), &Scalar::one());
                }
                // ± E_ij D₁: row i receives row j of D₁
                for c in 0..d1.cols() {
                    push(*i, c, d1.get(*j, c), &sign);
                }
                SparseVec::from_map(acc)
            })
            .collect()
    }

    fn codomain_key(&self, key: i64) -> i64 {
        match &self.grading {
            Grading::Graded { n, .. } => key + n,
            Grading::Filtered { delta } => key + delta,
        }
    }

    /// Cohomology of one piece. `known` are representatives from a smaller
    /// filtration stage, inserted (with their labels) before new ones.
    fn solve(&self, parity: Parity, key: i64, first_label: usize, known: &[(usize, SparseVec)]) -> Solver {
        let piece = self.piece(parity, key);
        let mut echelon = Echelon::new();
        if piece.len() == 0 {
            return Solver { piece, echelon, reps: Vec::new() };
        }
        let out = self.d_columns(parity, &piece, &self.piece(parity.flip(), self.codomain_key(key)));
        let kernel = sparse_kernel(&out);
        match &self.grading {
            Grading::Graded { n, .. } => {
                let src = self.piece(parity.flip(), key - n);
                for c in self.d_columns(parity.flip(), &src, &piece) {
                    echelon.insert_untracked(&c);
                }
            }
            Grading::Filtered { delta } => {
                let src = self.piece(parity.flip(), key + delta);
                let big = self.piece(parity, key + 2 * delta);
                let cols = self.d_columns(parity.flip(), &src, &big);
                let low = piece.len();
                let high: Vec<SparseVec> =
                    cols.iter().map(|c| c.iter().filter(|(k, _)| *k >= low).cloned().collect()).collect();
                for v in sparse_kernel(&high) {
                    let mut acc = SparseVec::new();
                    for (j, x) in v.iter() {
                        acc = acc.add_scaled(&cols[*j], x);
                    }
                    echelon.insert_untracked(&acc);
                }
            }
        }
        for (g, v) in known {
            echelon.insert(v, SparseVec::unit(*g));
        }
        let mut reps = Vec::new();
        let mut label = first_label;
        for z in kernel {
            let (rem, _) = echelon.reduce(&z);
            if rem.is_zero() {
                continue;
            }
            echelon.insert(&rem, SparseVec::unit(label));
            reps.push((label, rem));
            label += 1;
        }
        Solver { piece, echelon, reps }
    }

    fn matrix_of(&self, piece: &Piece, v: &SparseVec) -> PolyMatrix {
        let mut f = self.complex.zero();
        for (k, x) in v.iter() {
            let (i, j, m) = &piece.elems[*k];
            let mut p = f.get(*i, *j).clone();
            p.add_term(m.clone(), x);
            f.set(*i, *j, p);
        }
        f
    }

    fn coords_in(piece: &Piece, f: &PolyMatrix) -> Option<SparseVec> {
        let mut v = BTreeMap::new();
        for i in 0..f.rows() {
            for j in 0..f.cols() {
                for (m, x) in f.get(i, j).terms() {
                    v.insert(*piece.index.get(&(i, j, m.clone()))?, x.clone());
                }
            }
        }
        Some(SparseVec::from_map(v))
    }

    pub fn complex(&self) -> &HomComplex {
        &self.complex
    }

    pub fn source(&self) -> &MatrixFactorization {
        self.complex.source()
    }

    pub fn target(&self) -> &MatrixFactorization {
        self.complex.target()
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.grading, Grading::Graded { .. })
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    /// Range of doubled internal degrees examined (graded mode).
    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    /// Graded: no classes in the two weighted degrees past the window.
    /// Filtered: dimensions unchanged over the last two stages.
    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn dim_of(&self, parity: Parity) -> usize {
        self.classes.iter().filter(|c| c.parity == parity).count()
    }

    pub fn basis(&self) -> &[MorphismClass] {
        &self.classes
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    /// Dimensions per `(parity, doubled degree)`; the degree is `None` in
    /// filtered mode.
    pub fn piece_dims(&self) -> Vec<(Parity, Option<i64>, usize)> {
        self.space.pieces().iter().map(|p| (p.parity, p.degree, p.labels.len())).collect()
    }

    /// Coordinates of the class of the cocycle `f` in [`basis`](Self::basis).
    pub fn coordinates(&self, f: &PolyMatrix, parity: Parity) -> Result<Vec<Scalar>> {
        if !self.complex.is_cocycle(f, parity)? {
            return Err(Error::NotACocycle);
        }
        let mut out = vec![Scalar::zero(); self.dim()];
        let mut add = |combo: &SparseVec| {
            for (g, x) in combo.iter() {
                out[*g] += x;
            }
        };
        match &self.grading {
            Grading::Graded { weights, q1, q2, .. } => {
                let mut parts: BTreeMap<i64, PolyMatrix> = BTreeMap::new();
                for i in 0..f.rows() {
                    for j in 0..f.cols() {
                        for (m, x) in f.get(i, j).terms() {
                            let d = doubled_degree(q1, q2, weights, i, j, m);
                            let part = parts.entry(d).or_insert_with(|| self.complex.zero());
                            let mut p = part.get(i, j).clone();
                            p.add_term(m.clone(), x);
                            part.set(i, j, p);
                        }
                    }
                }
                for (d, part) in parts {
                    let owned;
                    let solver = match self.solvers.get(&(parity.bit(), d)) {
                        Some(s) => s,
                        None => {
                            owned = self.solve(parity, d, self.dim(), &[]);
                            if !owned.reps.is_empty() {
                                return Err(Error::OutsideWindow(d));
                            }
                            &owned
                        }
                    };
                    let v = Self::coords_in(&solver.piece, &part).expect("homogeneous part lies in its piece");
                    let (rem, combo) = solver.echelon.reduce(&v);
                    assert!(rem.is_zero(), "cocycle not in span of coboundaries and representatives");
                    add(&combo);
                }
            }
            Grading::Filtered { .. } => {
                let m = self.degree_bound.max(f.max_degree().unwrap_or(0) as i64);
                let owned;
                let solver = if m == self.degree_bound {
                    match self.solvers.get(&(parity.bit(), m)) {
                        Some(s) => s,
                        None => {
                            owned = self.solve(parity, m, self.dim(), &[]);
                            &owned
                        }
                    }
                } else {
                    let known = self.solvers.get(&(parity.bit(), self.degree_bound)).map_or(&[][..], |s| &s.reps[..]);
                    owned = self.solve(parity, m, self.dim(), known);
                    &owned
                };
                let v = Self::coords_in(&solver.piece, f).expect("stage contains every entry");
                let (rem, combo) = solver.echelon.reduce(&v);
                if !rem.is_zero() || combo.iter().any(|(g, _)| *g >= self.dim()) {
                    return Err(Error::OutsideWindow(m));
                }
                add(&combo);
            }
        }
        Ok(out)
    }

    /// Coordinates of a class whose objects match this space.
    pub fn class_coordinates(&self, c: &MorphismClass) -> Result<Vec<Scalar>> {
        if c.source != *self.source() || c.target != *self.target() {
            return Err(Error::ObjectMismatch("class does not belong to this Hom space".into()));
        }
        self.coordinates(&c.representative, c.parity)
    }

    /// Class with the given coordinates; the parity is that of the support
    /// (even for the zero vector).
    pub fn class_from_coordinates(&self, v: &[Scalar]) -> MorphismClass {
        let mut f = self.complex.zero();
        let mut parity = Parity::Even;
        let mut degree = None;
        for (c, x) in self.classes.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            parity = c.parity;
            degree = c.degree;
            f = f.add(&c.representative.scale(x)).unwrap();
        }
        MorphismClass {
            source: self.source().clone(),
            target: self.target().clone(),
            parity,
            degree: degree.filter(|_| homogeneous_degree(self.source(), self.target(), &f).is_some()),
            representative: f,
        }
    }

    /// Canonical representative of a class in this space.
    pub fn normalize(&self, c: &MorphismClass) -> Result<MorphismClass> {
        let v = self.class_coordinates(c)?;
        let mut n = self.class_from_coordinates(&v);
        if v.iter().all(Scalar::is_zero) {
            n.parity = c.parity;
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lg::LgPair;
    use crate::matfact::koszul_factorization;

    fn brane(lg: &LgPair, a: &str, b: &str) -> MatrixFactorization {
        let r = lg.ring();
        koszul_factorization(lg, &[(r.parse(a).unwrap(), r.parse(b).unwrap())]).unwrap()
    }

    #[test]
    fn end_of_x_for_x_squared() {
        let lg = LgPair::parse(&["x"], "x^2", None).unwrap();
        let a = brane(&lg, "x", "x");
        let h = hom_cohomology(&a, &a, default_degree_bound(&a, &a)).unwrap();
        assert_eq!((h.dim_of(Parity::Even), h.dim_of(Parity::Odd)), (1, 1));
        assert!(h.is_stabilized());
        let unit = h.coordinates(&PolyMatrix::identity(2, 1), Parity::Even).unwrap();
        assert!(unit.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn hom_between_different_branes() {
        let lg = LgPair::parse(&["x"], "x^3", None).unwrap();
        let a = brane(&lg, "x", "x^2");
        let b = brane(&lg, "x^2", "x");
        let h = hom_cohomology(&a, &b, default_degree_bound(&a, &b)).unwrap();
        assert_eq!((h.dim_of(Parity::Even), h.dim_of(Parity::Odd)), (1, 1));
    }

    #[test]
    fn zero_object_has_no_cohomology() {
        let lg = LgPair::parse(&["x"], "x^2", None).unwrap();
        let z = crate::matfact::make_factorization(&lg, 0, 0, PolyMatrix::zeros(0, 0, 1), PolyMatrix::zeros(0, 0, 1))
            .unwrap();
        let a = brane(&lg, "x", "x");
        assert_eq!(hom_cohomology(&z, &a, 4).unwrap().dim(), 0);
        assert_eq!(hom_cohomology(&a, &z, 4).unwrap().dim(), 0);
    }

    #[test]
    fn contractible_brane() {
        // (1, W) is contractible
        let lg = LgPair::parse(&["x"], "x^3", None).unwrap();
        let a = brane(&lg, "1", "x^3");
        assert_eq!(hom_cohomology(&a, &a, 6).unwrap().dim(), 0);
    }

    #[test]
    fn filtered_mode() {
        let lg = LgPair::parse(&["x"], "x^3-3*x+2", None).unwrap();
        let a = brane(&lg, "x-1", "x^2+x-2");
        let h = hom_cohomology(&a, &a, default_degree_bound(&a, &a)).unwrap();
        assert!(!h.is_graded());
        // W has a Morse critical point at x = 1: End is Cl_1, one even and one odd class
        assert_eq!((h.dim_of(Parity::Even), h.dim_of(Parity::Odd)), (1, 1));
        assert!(h.is_stabilized());
        let sq = PolyMatrix::identity(2, 1).mul_poly(&lg.ring().parse("x^2").unwrap());
        let v = h.coordinates(&sq, Parity::Even).unwrap();
        let unit = h.coordinates(&PolyMatrix::identity(2, 1), Parity::Even).unwrap();
        // x^2 acts as 1 at the critical point x = 1
        assert_eq!(v, unit);
    }

    #[test]
    fn negative_bound() {
        let lg = LgPair::parse(&["x"], "x^2", None).unwrap();
        let a = brane(&lg, "x", "x");
        assert!(matches!(hom_cohomology(&a, &a, -1), Err(Error::NegativeBound(-1))));
    }
}
