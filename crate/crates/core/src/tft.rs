//! The candidate open-closed TFT datum of an LG pair with finitely many
//! branes, and mechanical verification of its axioms.
//!
//! * bulk algebra: the Jacobi algebra with `Tr = scale · Res`, where `Res` is
//!   the residue functional normalized by `Res[hess W] = μ`;
//! * boundary traces (Kapustin-Li form):
//!   `tr_a(t) = c_d · Res[str(t · Σ_σ sgn(σ) ∂_{σ(1)}D ⋯ ∂_{σ(d)}D)]`,
//!   `c_d = 1/d!` unless configured;
//! * bulk-boundary map `e_a(h) = [h · Id]`, boundary-bulk map `f_a` its
//!   adjoint.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::Parity;
use crate::jacobi::{dot, JacobiAlgebra};
use crate::lg::LgPair;
use crate::linalg::Matrix;
use crate::matfact::{default_degree_bound, hom_cohomology, HomCohomology, MatrixFactorization};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Scalar;

/// How the operator `Φ_ab(t₁, t₂)` in the Cardy constraint is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CardySign {
    /// `t ↦ (-1)^{|t₁|(|t₂|+|t|)} t₂∘t∘t₁`: the sign from moving `t₁` past
    /// `t₂∘t` in a supercategory.
    Koszul,
    /// `t ↦ t₂∘t∘t₁` with no sign.
    Literal,
}

impl CardySign {
    fn sign(self, t1: Parity, t2: Parity, t: Parity) -> i64 {
        match self {
            CardySign::Literal => 1,
            CardySign::Koszul => t1.sign_with(t2 + t),
        }
    }
}

/// Normalization constants of the traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    /// `Tr = bulk · Res`.
    pub bulk: Scalar,
    /// `c_d`; `None` means `1/d!`.
    pub boundary: Option<Scalar>,
    pub cardy_sign: CardySign,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization { bulk: Scalar::one(), boundary: None, cardy_sign: CardySign::Koszul }
    }
}

impl Normalization {
    pub fn boundary_constant(&self, d: usize) -> Scalar {
        self.boundary.clone().unwrap_or_else(|| {
            let fact: i64 = (1..=d as i64).product();
            Scalar::from_ratio(1, fact)
        })
    }
}

/// The Jacobi algebra with its bulk trace.
#[derive(Clone, Debug)]
pub struct BulkAlgebra {
    pub algebra: JacobiAlgebra,
    /// Residue functional on the monomial basis, `Res[hess W] = μ`.
    pub residue: Vec<Scalar>,
    /// `Tr` on the monomial basis.
    pub trace: Vec<Scalar>,
    pub gram: Matrix,
    gram_inverse: Option<Matrix>,
}

impl BulkAlgebra {
    pub fn new(algebra: JacobiAlgebra, scale: &Scalar) -> Result<Self> {
        let residue = algebra.residue_functional()?;
        let trace: Vec<Scalar> = residue.iter().map(|r| r * scale).collect();
        let n = algebra.dimension();
        let mut gram = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut ei = vec![Scalar::zero(); n];
                ei[i] = Scalar::one();
                let mut ej = vec![Scalar::zero(); n];
                ej[j] = Scalar::one();
                gram[(i, j)] = dot(&trace, &algebra.multiply(&ei, &ej));
            }
        }
        let gram_inverse = gram.inverse();
        Ok(BulkAlgebra { algebra, residue, trace, gram, gram_inverse })
    }

    pub fn dimension(&self) -> usize {
        self.algebra.dimension()
    }

    pub fn tr(&self, h: &[Scalar]) -> Scalar {
        dot(&self.trace, h)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram_inverse.is_some()
    }

    pub fn basis_vector(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dimension()];
        v[k] = Scalar::one();
        v
    }
}

/// Finitely many branes with all Hom cohomologies and composition tensors.
#[derive(Clone, Debug)]
pub struct BraneCategory {
    pub names: Vec<String>,
    pub objects: Vec<MatrixFactorization>,
    /// `homs[a][b]` is `H(Hom(a, b))`.
    pub homs: Vec<Vec<HomCohomology>>,
    /// Coordinates of `1_a` in `End(a)`.
    pub units: Vec<Vec<Scalar>>,
    composition: HashMap<(usize, usize, usize), Vec<Vec<Vec<Scalar>>>>,
}

impl BraneCategory {
    /// `degree_bound` overrides the per-pair default.
    pub fn new(branes: &[(String, MatrixFactorization)], degree_bound: Option<i64>) -> Result<Self> {
        let objects: Vec<MatrixFactorization> = branes.iter().map(|(_, a)| a.clone()).collect();
        let names = branes.iter().map(|(n, _)| n.clone()).collect();
        let mut homs = Vec::new();
        for a in &objects {
            let mut row = Vec::new();
            for b in &objects {
                let bound = degree_bound.unwrap_or_else(|| default_degree_bound(a, b));
                row.push(hom_cohomology(a, b, bound)?);
            }
            homs.push(row);
        }
        let units = objects
            .iter()
            .enumerate()
            .map(|(k, a)| homs[k][k].coordinates(&PolyMatrix::identity(a.size(), a.lg().dimension()), Parity::Even))
            .collect::<Result<_>>()?;
        let mut cat = BraneCategory { names, objects, homs, units, composition: HashMap::new() };
        let n = cat.objects.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let table = cat.compute_composition(a, b, c)?;
                    cat.composition.insert((a, b, c), table);
                }
            }
        }
        Ok(cat)
    }

    fn compute_composition(&self, a: usize, b: usize, c: usize) -> Result<Vec<Vec<Vec<Scalar>>>> {
        let (hbc, hab, hac) = (&self.homs[b][c], &self.homs[a][b], &self.homs[a][c]);
        hbc.basis()
            .iter()
            .map(|g| {
                hab.basis()
                    .iter()
                    .map(|f| hac.coordinates(&g.representative.mul(&f.representative)?, g.parity + f.parity))
                    .collect()
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom(&self, a: usize, b: usize) -> &HomCohomology {
        &self.homs[a][b]
    }

    /// Parities of the basis of `Hom(a, b)`.
    pub fn parities(&self, a: usize, b: usize) -> Vec<Parity> {
        self.homs[a][b].basis().iter().map(|c| c.parity).collect()
    }

    /// `g ∘ f` in coordinates, for `f ∈ Hom(a,b)`, `g ∈ Hom(b,c)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let table = &self.composition[&(a, b, c)];
        let mut out = vec![Scalar::zero(); self.homs[a][c].dim()];
        for (i, gi) in g.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, fj) in f.iter().enumerate() {
                if fj.is_zero() {
                    continue;
                }
                let s = gi * fj;
                for (o, x) in out.iter_mut().zip(&table[i][j]) {
                    *o += &(x * &s);
                }
            }
        }
        out
    }
}

fn unit_vector(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

/// `Σ_σ sgn(σ) ∂_{σ(1)}D ⋯ ∂_{σ(d)}D`.
fn kapustin_li_kernel(a: &MatrixFactorization) -> Result<PolyMatrix> {
    let d = a.lg().dimension();
    let partials: Vec<PolyMatrix> =
        (0..d).map(|k| a.differential().partial_derivative(k)).collect::<Result<_>>()?;
    let mut total = PolyMatrix::zeros(a.size(), a.size(), d);
    let mut perm: Vec<usize> = (0..d).collect();
    permutations(&mut perm, 0, &mut |p, sign| {
        let mut m = PolyMatrix::identity(a.size(), d);
        for &k in p {
            m = m.mul(&partials[k]).unwrap();
        }
        total = if sign { total.sub(&m).unwrap() } else { total.add(&m).unwrap() };
    });
    Ok(total)
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize], bool)) {
    fn go(p: &mut Vec<usize>, k: usize, odd: bool, f: &mut dyn FnMut(&[usize], bool)) {
        if k == p.len() {
            f(p, odd);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(p, k + 1, odd ^ (i != k), f);
            p.swap(k, i);
        }
    }
    go(p, k, false, f)
}

/// The assembled datum `(H, T, e, Tr, tr)`.
#[derive(Clone, Debug)]
pub struct TftDatum {
    pub bulk: BulkAlgebra,
    pub branes: BraneCategory,
    /// `e[a]` has columns `e_a(h_k)` in coordinates of `End(a)`.
    pub e: Vec<Matrix>,
    /// `traces[a][i] = tr_a(basis_i of End(a))`.
    pub traces: Vec<Vec<Scalar>>,
    /// `μ = d mod 2`.
    pub parity: Parity,
    pub normalization: Normalization,
}

/// Assemble the datum for the given branes.
pub fn assemble(
    lg: &LgPair,
    bulk: JacobiAlgebra,
    branes: &[(String, MatrixFactorization)],
    degree_bound: Option<i64>,
    normalization: Normalization,
) -> Result<TftDatum> {
    if branes.iter().any(|(_, a)| a.lg() != lg) {
        return Err(Error::LgMismatch);
    }
    let bulk = BulkAlgebra::new(bulk, &normalization.bulk)?;
    let cat = BraneCategory::new(branes, degree_bound)?;
    let cd = normalization.boundary_constant(lg.dimension());
    let mut e = Vec::new();
    let mut traces = Vec::new();
    for (k, a) in cat.objects.iter().enumerate() {
        let end = cat.hom(k, k);
        let cols = bulk
            .algebra
            .basis()
            .iter()
            .map(|m| {
                let h = crate::poly::Polynomial::term(m.clone(), Scalar::one());
                end.coordinates(&PolyMatrix::scalar(a.size(), &h), Parity::Even)
            })
            .collect::<Result<Vec<_>>>()?;
        e.push(Matrix::from_columns(end.dim(), &cols)?);
        let kernel = kapustin_li_kernel(a)?.scale(&cd);
        let tr = end
            .basis()
            .iter()
            .map(|t| boundary_trace_of(&bulk, a, &kernel, &t.representative))
            .collect::<Result<Vec<_>>>()?;
        traces.push(tr);
    }
    Ok(TftDatum { bulk, branes: cat, e, traces, parity: lg.signature(), normalization })
}

fn boundary_trace_of(bulk: &BulkAlgebra, a: &MatrixFactorization, kernel: &PolyMatrix, t: &PolyMatrix) -> Result<Scalar> {
    let m = t.mul(kernel)?;
    let mut s = crate::poly::Polynomial::zero(a.lg().dimension());
    for i in 0..a.size() {
        s = match a.basis_parity(i) {
            Parity::Even => &s + m.get(i, i),
            Parity::Odd => &s - m.get(i, i),
        };
    }
    bulk.algebra.apply_functional(&bulk.residue, &s)
}

impl TftDatum {
    pub fn brane_count(&self) -> usize {
        self.branes.len()
    }

    /// `e_a(h)` in coordinates of `End(a)`.
    pub fn bulk_boundary(&self, a: usize, h: &[Scalar]) -> Vec<Scalar> {
        self.e[a].mul_vec(h).expect("bulk vector length")
    }

    /// `tr_a(t)` for `t` in coordinates of `End(a)`.
    pub fn boundary_trace(&self, a: usize, t: &[Scalar]) -> Scalar {
        dot(&self.traces[a], t)
    }

    /// `f_a(t)`: the unique bulk class with `Tr(h f_a(t)) = tr_a(e_a(h)∘t)`.
    pub fn boundary_bulk(&self, a: usize, t: &[Scalar]) -> Result<Vec<Scalar>> {
        let inv = self
            .bulk
            .gram_inverse
            .as_ref()
            .ok_or_else(|| Error::DegeneratePairing("bulk trace pairing is degenerate".into()))?;
        let rhs: Vec<Scalar> = (0..self.bulk.dimension())
            .map(|k| {
                let eh = self.bulk_boundary(a, &self.bulk.basis_vector(k));
                self.boundary_trace(a, &self.branes.compose(a, a, a, &eh, t))
            })
            .collect();
        inv.mul_vec(&rhs)
    }

    /// `⟨t₁, t₂⟩_{a,b} = tr_b(t₁∘t₂)`.
    pub fn pairing(&self, a: usize, b: usize, t1: &[Scalar], t2: &[Scalar]) -> Scalar {
        self.boundary_trace(b, &self.branes.compose(b, a, b, t1, t2))
    }

    /// Gram matrix of `⟨·,·⟩_{a,b}` on the chosen bases.
    pub fn pairing_matrix(&self, a: usize, b: usize) -> Matrix {
        let (n1, n2) = (self.branes.hom(a, b).dim(), self.branes.hom(b, a).dim());
        let mut m = Matrix::zeros(n1, n2);
        for i in 0..n1 {
            for j in 0..n2 {
                m[(i, j)] = self.pairing(a, b, &unit_vector(n1, i), &unit_vector(n2, j));
            }
        }
        m
    }

    /// Both sides of the Cardy constraint for basis elements `i ∈ End(a)`,
    /// `j ∈ End(b)`.
    pub fn cardy_sides(&self, a: usize, b: usize, i: usize, j: usize, sign: CardySign) -> Result<(Scalar, Scalar)> {
        let (ea, eb) = (self.branes.hom(a, a), self.branes.hom(b, b));
        let t1 = unit_vector(ea.dim(), i);
        let t2 = unit_vector(eb.dim(), j);
        let fa = self.boundary_bulk(a, &t1)?;
        let fb = self.boundary_bulk(b, &t2)?;
        let lhs = self.bulk.tr(&self.bulk.algebra.multiply(&fa, &fb));
        let (p1, p2) = (ea.basis()[i].parity, eb.basis()[j].parity);
        let hab = self.branes.hom(a, b);
        let mut rhs = Scalar::zero();
        for (k, t) in hab.basis().iter().enumerate() {
            let tv = unit_vector(hab.dim(), k);
            let inner = self.branes.compose(a, a, b, &tv, &t1);
            let outer = self.branes.compose(a, b, b, &t2, &inner);
            let s = Scalar::from_int(sign.sign(p1, p2, t.parity) * t.parity.sign());
            rhs += &(&outer[k] * &s);
        }
        Ok((lhs, rhs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

/// Offending basis tuple with both sides of the violated identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tuple: Vec<String>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseVerdict {
    pub clause: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardyResult {
    pub sign: CardySign,
    pub verdict: Verdict,
    /// The single constant `c` with `LHS = c · RHS` on every checked pair.
    pub constant: Option<Scalar>,
    pub pairs_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub parity: Parity,
    pub clauses: Vec<ClauseVerdict>,
    /// Under the configured sign convention.
    pub cardy: CardyResult,
    /// Under the other convention, reported as data.
    pub cardy_alternative: CardyResult,
}

impl AxiomReport {
    pub fn clause(&self, name: &str) -> Option<&ClauseVerdict> {
        self.clauses.iter().find(|c| c.clause == name)
    }

    /// True when no clause (including Cardy) failed.
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.verdict != Verdict::Fail) && self.cardy.verdict != Verdict::Fail
    }
}

pub const CLAUSES: &[&str] = &[
    "bulk-unital",
    "bulk-supercommutative",
    "bulk-associative",
    "frobenius-nondegenerate",
    "hom-finite",
    "composition-associative",
    "composition-unital",
    "bulk-boundary-unital",
    "bulk-boundary-multiplicative",
    "graded-centrality",
    "trace-parity",
    "cy-graded-symmetry",
    "cy-nondegenerate",
    "adjointness",
];

struct Check {
    name: &'static str,
    failure: Option<(Option<String>, Option<Witness>)>,
    na: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Check {
        Check { name, failure: None, na: None }
    }

    fn expect_eq(&mut self, tuple: impl FnOnce() -> Vec<String>, lhs: &Scalar, rhs: &Scalar) {
        if self.failure.is_none() && lhs != rhs {
            self.failure = Some((None, Some(Witness { tuple: tuple(), lhs: lhs.clone(), rhs: rhs.clone() })));
        }
    }

    fn fail(&mut self, detail: String, witness: Option<Witness>) {
        if self.failure.is_none() {
            self.failure = Some((Some(detail), witness));
        }
    }

    fn finish(self) -> ClauseVerdict {
        let (verdict, detail, witness) = match (self.na, self.failure) {
            (Some(why), _) => (Verdict::NotApplicable, Some(why), None),
            (None, Some((d, w))) => (Verdict::Fail, d, w),
            (None, None) => (Verdict::Pass, None, None),
        };
        ClauseVerdict { clause: self.name.to_string(), verdict, detail, witness }
    }
}

fn vec_eq(a: &[Scalar], b: &[Scalar]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

const DEGENERATE: &str = "not applicable: bulk pairing degenerate";

/// Check every axiom clause; failures are data with witnesses.
pub fn verify_tft_datum(datum: &TftDatum) -> AxiomReport {
    let bulk = &datum.bulk;
    let alg = &bulk.algebra;
    let cat = &datum.branes;
    let nb = bulk.dimension();
    let n = cat.len();
    let hname = |k: usize| format!("h:{}", alg.basis_strings()[k]);
    let tname = |a: usize, b: usize, i: usize| format!("{}->{}#{}", cat.names[a], cat.names[b], i);
    let mut out = Vec::new();

    let mut c = Check::new("bulk-unital");
    if !alg.is_unital() {
        c.fail("the class of 1 is not a two-sided unit".into(), None);
    }
    out.push(c.finish());
    let mut c = Check::new("bulk-supercommutative");
    for i in 0..nb {
        for j in 0..nb {
            let (x, y) = (bulk.basis_vector(i), bulk.basis_vector(j));
            if let Some(k) = vec_eq(&alg.multiply(&x, &y), &alg.multiply(&y, &x)) {
                c.expect_eq(|| vec![hname(i), hname(j), hname(k)], &alg.multiply(&x, &y)[k], &alg.multiply(&y, &x)[k]);
            }
        }
    }
    out.push(c.finish());
    let mut c = Check::new("bulk-associative");
    if !alg.is_associative() {
        c.fail("multiplication table is not associative".into(), None);
    }
    out.push(c.finish());
    let mut c = Check::new("frobenius-nondegenerate");
    if !bulk.is_nondegenerate() {
        let w = bulk.gram.kernel().into_iter().next();
        c.fail(
            format!("bulk Gram matrix is singular; kernel vector {}", w.map(|v| fmt_vec(&v)).unwrap_or_default()),
            None,
        );
    }
    out.push(c.finish());

    let mut c = Check::new("hom-finite");
    for a in 0..n {
        for b in 0..n {
            if !cat.hom(a, b).is_stabilized() {
                c.fail(format!("Hom({}, {}) did not stabilize within the degree window", cat.names[a], cat.names[b]), None);
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("composition-associative");
    'outer: for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    let (nab, nbc, ncd) = (cat.hom(a, b).dim(), cat.hom(b, cc).dim(), cat.hom(cc, d).dim());
                    for i in 0..nab {
                        for j in 0..nbc {
                            for k in 0..ncd {
                                let (f, g, h) = (unit_vector(nab, i), unit_vector(nbc, j), unit_vector(ncd, k));
                                let left = cat.compose(a, cc, d, &h, &cat.compose(a, b, cc, &g, &f));
                                let right = cat.compose(a, b, d, &cat.compose(b, cc, d, &h, &g), &f);
                                if let Some(p) = vec_eq(&left, &right) {
                                    c.expect_eq(
                                        || vec![tname(a, b, i), tname(b, cc, j), tname(cc, d, k), format!("component {p}")],
                                        &left[p],
                                        &right[p],
                                    );
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("composition-unital");
    for a in 0..n {
        for b in 0..n {
            let nab = cat.hom(a, b).dim();
            for i in 0..nab {
                let f = unit_vector(nab, i);
                let left = cat.compose(a, b, b, &cat.units[b], &f);
                let right = cat.compose(a, a, b, &f, &cat.units[a]);
                for (side, v) in [("1_b∘f", left), ("f∘1_a", right)] {
                    if let Some(p) = vec_eq(&v, &f) {
                        c.expect_eq(|| vec![tname(a, b, i), side.into(), format!("component {p}")], &v[p], &f[p]);
                    }
                }
            }
        }
    }
    out.push(c.finish());

    let unit_bulk = alg.unit();
    let mut c = Check::new("bulk-boundary-unital");
    for a in 0..n {
        let e1 = datum.bulk_boundary(a, &unit_bulk);
        if let Some(p) = vec_eq(&e1, &cat.units[a]) {
            c.expect_eq(|| vec![cat.names[a].clone(), format!("component {p}")], &e1[p], &cat.units[a][p]);
        }
    }
    out.push(c.finish());

    let mut c = Check::new("bulk-boundary-multiplicative");
    for a in 0..n {
        for i in 0..nb {
            for j in 0..nb {
                let (x, y) = (bulk.basis_vector(i), bulk.basis_vector(j));
                let left = datum.bulk_boundary(a, &alg.multiply(&x, &y));
                let right = cat.compose(a, a, a, &datum.bulk_boundary(a, &x), &datum.bulk_boundary(a, &y));
                if let Some(p) = vec_eq(&left, &right) {
                    c.expect_eq(|| vec![cat.names[a].clone(), hname(i), hname(j), format!("component {p}")], &left[p], &right[p]);
                }
            }
        }
    }
    out.push(c.finish());

    // bulk classes are all even, so the sign (-1)^{|h||t|} is +1
    let mut c = Check::new("graded-centrality");
    for a in 0..n {
        for b in 0..n {
            let nab = cat.hom(a, b).dim();
            for k in 0..nb {
                let h = bulk.basis_vector(k);
                for i in 0..nab {
                    let t = unit_vector(nab, i);
                    let left = cat.compose(a, b, b, &datum.bulk_boundary(b, &h), &t);
                    let right = cat.compose(a, a, b, &t, &datum.bulk_boundary(a, &h));
                    if let Some(p) = vec_eq(&left, &right) {
                        c.expect_eq(|| vec![hname(k), tname(a, b, i), format!("component {p}")], &left[p], &right[p]);
                    }
                }
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("trace-parity");
    for a in 0..n {
        for (i, t) in cat.hom(a, a).basis().iter().enumerate() {
            if t.parity != datum.parity && !datum.traces[a][i].is_zero() {
                c.expect_eq(|| vec![tname(a, a, i)], &datum.traces[a][i], &Scalar::zero());
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("cy-graded-symmetry");
    for a in 0..n {
        for b in 0..n {
            let (pab, pba) = (cat.parities(a, b), cat.parities(b, a));
            for (i, &p1) in pab.iter().enumerate() {
                for (j, &p2) in pba.iter().enumerate() {
                    let t1 = unit_vector(pab.len(), i);
                    let t2 = unit_vector(pba.len(), j);
                    let left = datum.pairing(a, b, &t1, &t2);
                    let right = &datum.pairing(b, a, &t2, &t1) * &Scalar::from_int(p1.sign_with(p2));
                    c.expect_eq(|| vec![tname(a, b, i), tname(b, a, j)], &left, &right);
                }
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("cy-nondegenerate");
    for a in 0..n {
        for b in 0..n {
            let m = datum.pairing_matrix(a, b);
            let degenerate = m.rows() != m.cols() || m.rank() < m.rows();
            if degenerate {
                let w = m.transpose().kernel().into_iter().next().or_else(|| m.kernel().into_iter().next());
                c.fail(
                    format!(
                        "pairing Hom({0},{1}) x Hom({1},{0}) is degenerate; null vector {2}",
                        cat.names[a],
                        cat.names[b],
                        w.map(|v| fmt_vec(&v)).unwrap_or_default()
                    ),
                    None,
                );
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("adjointness");
    if !bulk.is_nondegenerate() {
        c.na = Some(DEGENERATE.into());
    } else {
        for a in 0..n {
            let ne = cat.hom(a, a).dim();
            for i in 0..ne {
                let t = unit_vector(ne, i);
                let f = datum.boundary_bulk(a, &t).expect("nondegenerate");
                for k in 0..nb {
                    let h = bulk.basis_vector(k);
                    let left = bulk.tr(&alg.multiply(&h, &f));
                    let right = datum.boundary_trace(a, &cat.compose(a, a, a, &datum.bulk_boundary(a, &h), &t));
                    c.expect_eq(|| vec![hname(k), tname(a, a, i)], &left, &right);
                }
            }
        }
    }
    out.push(c.finish());

    let sign = datum.normalization.cardy_sign;
    let other = match sign {
        CardySign::Koszul => CardySign::Literal,
        CardySign::Literal => CardySign::Koszul,
    };
    AxiomReport {
        parity: datum.parity,
        clauses: out,
        cardy: cardy_check(datum, sign),
        cardy_alternative: cardy_check(datum, other),
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Cardy constraint over all brane pairs and basis pairs, solving for one
/// global constant `c` with `LHS = c · RHS`.
pub fn cardy_check(datum: &TftDatum, sign: CardySign) -> CardyResult {
    let mut result = CardyResult { sign, verdict: Verdict::Pass, constant: None, pairs_checked: 0, detail: None, witness: None };
    if !datum.bulk.is_nondegenerate() {
        result.verdict = Verdict::NotApplicable;
        result.detail = Some(DEGENERATE.into());
        return result;
    }
    let cat = &datum.branes;
    let n = cat.len();
    let mut pending_zero_rhs: Option<Witness> = None;
    for a in 0..n {
        for b in 0..n {
            for i in 0..cat.hom(a, a).dim() {
                for j in 0..cat.hom(b, b).dim() {
                    let (lhs, rhs) = datum.cardy_sides(a, b, i, j, sign).expect("nondegenerate");
                    result.pairs_checked += 1;
                    let tuple = || vec![format!("{}#{}", cat.names[a], i), format!("{}#{}", cat.names[b], j)];
                    if rhs.is_zero() {
                        if !lhs.is_zero() && pending_zero_rhs.is_none() {
                            pending_zero_rhs = Some(Witness { tuple: tuple(), lhs, rhs });
                        }
                        continue;
                    }
                    let ratio = &lhs / &rhs;
                    match &result.constant {
                        None => result.constant = Some(ratio),
                        Some(c) if *c != ratio && result.witness.is_none() => {
                            result.verdict = Verdict::Fail;
                            result.detail = Some(format!("ratio {ratio} differs from constant {c}"));
                            result.witness = Some(Witness { tuple: tuple(), lhs, rhs });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    if let Some(w) = pending_zero_rhs {
        if result.verdict == Verdict::Pass {
            result.verdict = Verdict::Fail;
            result.detail = Some("nonzero closed-channel side against zero supertrace".into());
            result.witness = Some(w);
        }
    }
    if result.verdict == Verdict::Pass && result.constant.is_none() {
        result.detail = Some("both sides vanish on every pair; constant undetermined".into());
    }
    result
}
