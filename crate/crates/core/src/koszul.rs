//! The Koszul complex of the contraction `ι_W = -i (∂W)⌟` on polyvector fields
//! of `ℂ^d`, and its degreewise cohomology.
//!
//! Terms: `∧^k` of the free module with basis `∂_1, …, ∂_d` sits in
//! homological degree `-k`. Wedge monomials `∂_{i_1} ∧ … ∧ ∂_{i_k}` are indexed
//! by increasing index sets in lexicographic order, and
//!
//! ```text
//! ι_W(∂_{i_1} ∧ … ∧ ∂_{i_k}) = Σ_r (-1)^r (-i ∂_{i_r}W) ∂_{i_1} ∧ … ∧ ∂_{i_r}^ ∧ … ∧ ∂_{i_k}
//! ```
//!
//! with `r` counted from zero.
//!
//! For quasi-homogeneous `W` (weights `w_j`, weighted degree `N`) the element
//! `x^α ∂_I` gets internal degree `deg_w(x^α) + Σ_{j∈I} (N - w_j)`, which `ι_W`
//! preserves, so every graded piece is finite and results are exact. Otherwise
//! unit weights and `N = deg W` define an increasing filtration by subcomplexes
//! and the table reports cohomology of each filtration stage.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lg::LgPair;
use crate::linalg::{sparse_kernel, sparse_rank, Echelon, SparseVec};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KoszulGrading {
    Weighted { weights: Vec<u32>, degree: u64 },
    Filtered { degree: u64 },
}

impl KoszulGrading {
    fn weights(&self, d: usize) -> Vec<u32> {
        match self {
            KoszulGrading::Weighted { weights, .. } => weights.clone(),
            KoszulGrading::Filtered { .. } => vec![1; d],
        }
    }

    fn degree(&self) -> u64 {
        match self {
            KoszulGrading::Weighted { degree, .. } | KoszulGrading::Filtered { degree } => *degree,
        }
    }
}

/// An element of `∧^k`: polynomial coefficients on wedge monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement {
    pub wedge_degree: usize,
    pub components: Vec<(Vec<usize>, Polynomial)>,
}

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    lg: LgPair,
    wedges: Vec<Vec<Vec<usize>>>,
    wedge_index: Vec<HashMap<Vec<usize>, usize>>,
    /// `differentials[k - 1]` maps `∧^k → ∧^{k-1}`.
    differentials: Vec<PolyMatrix>,
    grading: KoszulGrading,
}

fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Build the complex of `ι_W`. The identity `ι_W ∘ ι_W = 0` is checked as an
/// exact polynomial identity.
pub fn contraction_iota(lg: &LgPair) -> KoszulComplex {
    let d = lg.dimension();
    let n = d;
    let wedges: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| subsets(d, k)).collect();
    let wedge_index: Vec<HashMap<Vec<usize>, usize>> = wedges
        .iter()
        .map(|ws| ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();
    let minus_i = -Scalar::i();
    let partials: Vec<Polynomial> = lg.partials().iter().map(|p| p.scale(&minus_i)).collect();
    let mut differentials = Vec::with_capacity(d);
    for k in 1..=d {
        let mut m = PolyMatrix::zeros(wedges[k - 1].len(), wedges[k].len(), n);
        for (col, set) in wedges[k].iter().enumerate() {
            for (r, &i) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(r);
                let row = wedge_index[k - 1][&rest];
                let entry = if r % 2 == 0 { partials[i].clone() } else { -&partials[i] };
                m.set(row, col, entry);
            }
        }
        differentials.push(m);
    }
    let grading = match lg.quasi_homogeneity() {
        Some(q) => KoszulGrading::Weighted { weights: q.weights, degree: q.degree },
        None => KoszulGrading::Filtered { degree: lg.superpotential().degree().unwrap_or(0) as u64 },
    };
    let cx = KoszulComplex { lg: lg.clone(), wedges, wedge_index, differentials, grading };
    assert!(cx.square_is_zero(), "ι_W ∘ ι_W != 0");
    cx
}

impl KoszulComplex {
    pub fn lg(&self) -> &LgPair {
        &self.lg
    }

    pub fn dimension(&self) -> usize {
        self.lg.dimension()
    }

    pub fn grading(&self) -> &KoszulGrading {
        &self.grading
    }

    pub fn wedges(&self, k: usize) -> &[Vec<usize>] {
        &self.wedges[k]
    }

    /// Matrix of `ι_W: ∧^k → ∧^{k-1}` for `1 ≤ k ≤ d`.
    pub fn differential(&self, k: usize) -> &PolyMatrix {
        &self.differentials[k - 1]
    }

    pub fn square_is_zero(&self) -> bool {
        (2..=self.dimension()).all(|k| self.differential(k - 1).mul(self.differential(k)).unwrap().is_zero())
    }

    pub fn apply(&self, x: &KoszulElement) -> KoszulElement {
        let k = x.wedge_degree;
        let nvars = self.dimension();
        if k == 0 {
            return KoszulElement { wedge_degree: 0, components: Vec::new() };
        }
        let m = self.differential(k);
        let mut acc = vec![Polynomial::zero(nvars); self.wedges[k - 1].len()];
        for (set, p) in &x.components {
            let col = self.wedge_index[k][set];
            for (row, slot) in acc.iter_mut().enumerate() {
                let e = m.get(row, col);
                if !e.is_zero() {
                    *slot = &*slot + &(e * p);
                }
            }
        }
        KoszulElement {
            wedge_degree: k - 1,
            components: self.wedges[k - 1].iter().cloned().zip(acc).filter(|(_, p)| !p.is_zero()).collect(),
        }
    }

    fn shift(&self, set: &[usize]) -> i64 {
        let w = self.grading.weights(self.dimension());
        let n = self.grading.degree() as i64;
        set.iter().map(|&j| n - w[j] as i64).sum()
    }

    /// Lowest internal degree that can carry anything.
    pub fn min_internal_degree(&self) -> i64 {
        self.wedges.iter().flatten().map(|s| self.shift(s)).min().unwrap_or(0).min(0)
    }

    /// Basis of the piece of `∧^k` in internal degree `m` (graded) or of
    /// filtration stage `m` (filtered).
    pub fn piece_basis(&self, k: usize, m: i64) -> Vec<(usize, Monomial)> {
        let w = self.grading.weights(self.dimension());
        let mut out = Vec::new();
        for (idx, set) in self.wedges[k].iter().enumerate() {
            let left = m - self.shift(set);
            match self.grading {
                KoszulGrading::Weighted { .. } => {
                    out.extend(monomials_of_degree(&w, left).into_iter().map(|mono| (idx, mono)));
                }
                KoszulGrading::Filtered { .. } => {
                    for e in 0..=left {
                        out.extend(monomials_of_degree(&w, e).into_iter().map(|mono| (idx, mono)));
                    }
                }
            }
        }
        out
    }

    /// Columns of `ι_W` restricted to the piece `(k, m)`, in coordinates of the
    /// piece `(k-1, m)`.
    fn piece_columns(&self, k: usize, m: i64) -> (Vec<(usize, Monomial)>, Vec<SparseVec>) {
        let domain = self.piece_basis(k, m);
        if k == 0 {
            return (domain, Vec::new());
        }
        let target = self.piece_basis(k - 1, m);
        let index: HashMap<(usize, Monomial), usize> = target.into_iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mat = self.differential(k);
        let cols = domain
            .iter()
            .map(|(col, mono)| {
                let mut v = BTreeMap::new();
                for row in 0..mat.rows() {
                    for (tm, c) in mat.get(row, *col).terms() {
                        let key = (row, tm.mul(mono));
                        let i = *index.get(&key).expect("differential leaves the graded piece");
                        let e: &mut Scalar = v.entry(i).or_default();
                        *e += c;
                    }
                }
                SparseVec::from_map(v)
            })
            .collect();
        (domain, cols)
    }

    fn rank_out_of(&self, k: usize, m: i64) -> usize {
        if k == 0 || k > self.dimension() {
            return 0;
        }
        sparse_rank(&self.piece_columns(k, m).1)
    }

    /// `dim H^{-k}` in internal degree (or filtration stage) `m`.
    pub fn cohomology_dim(&self, k: usize, m: i64) -> usize {
        let n = self.piece_basis(k, m).len();
        n - self.rank_out_of(k, m) - self.rank_out_of(k + 1, m)
    }

    /// A cocycle in `∧^k` of degree `m` that is not a coboundary, if any.
    pub fn nonbounding_cocycle(&self, k: usize, m: i64) -> Option<KoszulElement> {
        let (domain, cols) = self.piece_columns(k, m);
        let kernel = if k == 0 { (0..domain.len()).map(SparseVec::unit).collect() } else { sparse_kernel(&cols) };
        let mut image = Echelon::new();
        if k < self.dimension() {
            for c in self.piece_columns(k + 1, m).1 {
                image.insert_untracked(&c);
            }
        }
        let z = kernel.into_iter().find(|z| !image.contains(z))?;
        Some(self.element_from_coords(k, &domain, &z))
    }

    fn element_from_coords(&self, k: usize, basis: &[(usize, Monomial)], v: &SparseVec) -> KoszulElement {
        let nvars = self.dimension();
        let mut comps: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (i, c) in v.iter() {
            let (w, mono) = &basis[*i];
            let p = comps.entry(*w).or_insert_with(|| Polynomial::zero(nvars));
            p.add_term(mono.clone(), c);
        }
        KoszulElement {
            wedge_degree: k,
            components: comps.into_iter().map(|(w, p)| (self.wedges[k][w].clone(), p)).collect(),
        }
    }

    /// Whether `x` (homogeneous of degree `m`) lies in the image of `ι_W` from
    /// `∧^{k+1}`.
    pub fn is_coboundary(&self, x: &KoszulElement, m: i64) -> bool {
        let k = x.wedge_degree;
        let domain = self.piece_basis(k, m);
        let index: HashMap<(usize, Monomial), usize> = domain.into_iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut coords = BTreeMap::new();
        for (set, p) in &x.components {
            let w = self.wedge_index[k][set];
            for (mono, c) in p.terms() {
                match index.get(&(w, mono.clone())) {
                    Some(&i) => {
                        coords.insert(i, c.clone());
                    }
                    None => return false,
                }
            }
        }
        let v = SparseVec::from_map(coords);
        if k >= self.dimension() {
            return v.is_zero();
        }
        let mut image = Echelon::new();
        for c in self.piece_columns(k + 1, m).1 {
            image.insert_untracked(&c);
        }
        image.contains(&v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    /// Homological degree, `-d ≤ k ≤ 0`.
    pub k: i64,
    /// Internal degree (weighted mode) or filtration stage (filtered mode).
    pub m: i64,
    pub dim: usize,
}

/// Cohomology dimensions per homological and internal degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimensionTable {
    pub mode: String,
    pub weights: Vec<u32>,
    pub w_degree: u64,
    pub degree_bound: i64,
    /// Ordered by `m`, then by `k` descending.
    pub rows: Vec<DimensionRow>,
    /// Filtered mode only: whether every entry is unchanged over the last two stages.
    pub stabilized: Option<bool>,
    pub note: Option<String>,
}

pub const FILTERED_NOTE: &str = "W is not quasi-homogeneous: entries are cohomology of the total-degree \
     filtration stage F_m, and `stabilized` is a heuristic (unchanged over the last two stages)";

impl GradedDimensionTable {
    pub fn dim(&self, k: i64, m: i64) -> Option<usize> {
        self.rows.iter().find(|r| r.k == k && r.m == m).map(|r| r.dim)
    }

    pub fn is_filtered(&self) -> bool {
        self.stabilized.is_some()
    }

    /// Total dimension of `H^k` within the bound.
    pub fn total(&self, k: i64) -> usize {
        if self.is_filtered() {
            self.dim(k, self.degree_bound).unwrap_or(0)
        } else {
            self.rows.iter().filter(|r| r.k == k).map(|r| r.dim).sum()
        }
    }
}

pub fn koszul_cohomology(lg: &LgPair, degree_bound: i64) -> Result<GradedDimensionTable> {
    if degree_bound < 0 {
        return Err(Error::NegativeBound(degree_bound));
    }
    let cx = contraction_iota(lg);
    let d = cx.dimension();
    let mut rows = Vec::new();
    for m in cx.min_internal_degree()..=degree_bound {
        // ranks shared between neighbouring k
        let ranks: Vec<usize> = (0..=d + 1).map(|k| cx.rank_out_of(k, m)).collect();
        for k in 0..=d {
            let n = cx.piece_basis(k, m).len();
            rows.push(DimensionRow { k: -(k as i64), m, dim: n - ranks[k] - ranks[k + 1] });
        }
    }
    let (mode, weights, w_degree, stabilized, note) = match cx.grading() {
        KoszulGrading::Weighted { weights, degree } => ("weighted".to_string(), weights.clone(), *degree, None, None),
        KoszulGrading::Filtered { degree } => {
            let at = |k: i64, m: i64| rows.iter().find(|r| r.k == k && r.m == m).map(|r| r.dim);
            let stable = (0..=d as i64).all(|k| {
                let k = -k;
                let last = at(k, degree_bound);
                last == at(k, degree_bound - 1) && last == at(k, degree_bound - 2)
            });
            ("total-degree-filtration".to_string(), vec![1; d], *degree, Some(stable), Some(FILTERED_NOTE.to_string()))
        }
    };
    Ok(GradedDimensionTable { mode, weights, w_degree, degree_bound, rows, stabilized, note })
}

/// Outcome of [`check_vanishing_negative_degrees`].
#[derive(Clone, Debug)]
pub struct VanishingCheck {
    pub vanishes: bool,
    /// On failure: homological degree, internal degree, and a cocycle that
    /// does not bound.
    pub witness: Option<(i64, i64, KoszulElement)>,
}

/// Whether `H^k = 0` for all `k < 0` in every degree up to `degree_bound`.
pub fn check_vanishing_negative_degrees(lg: &LgPair, degree_bound: i64) -> Result<VanishingCheck> {
    if degree_bound < 0 {
        return Err(Error::NegativeBound(degree_bound));
    }
    let cx = contraction_iota(lg);
    for m in cx.min_internal_degree()..=degree_bound {
        for k in 1..=cx.dimension() {
            if cx.cohomology_dim(k, m) > 0 {
                let z = cx.nonbounding_cocycle(k, m).expect("nonzero cohomology has a witness");
                return Ok(VanishingCheck { vanishes: false, witness: Some((-(k as i64), m, z)) });
            }
        }
    }
    Ok(VanishingCheck { vanishes: true, witness: None })
}
