//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here uses Gröbner bases, the Koszul module or
//! the Hom cohomology solver.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lgtft::graded::Parity;
use lgtft::lg::LgPair;
use lgtft::matfact::{koszul_factorization, make_factorization, MatrixFactorization};
use lgtft::poly::{Monomial, Polynomial};
use lgtft::polymatrix::PolyMatrix;
use lgtft::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rank over Q by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            for j in c..ncols {
                let t = &rows[r][j] * &f;
                rows[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

/// All exponent vectors of weighted degree exactly `m`.
pub fn exponents_of_degree(weights: &[u32], m: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], m: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == weights.len() {
            if m == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = weights[prefix.len()] as i64;
        let mut e = 0;
        while e * w <= m {
            prefix.push(e as u32);
            go(weights, m - e * w, prefix, out);
            prefix.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if m >= 0 {
        go(weights, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Rational coefficients of `p`, keyed by exponent vector.
pub fn rational_terms(p: &Polynomial) -> BTreeMap<Vec<u32>, Q> {
    p.terms()
        .map(|(m, c)| {
            assert!(c.im().is_zero(), "oracle needs rational coefficients");
            (m.exponents().to_vec(), c.re().clone())
        })
        .collect()
}

fn shift(e: &[u32], by: &[u32]) -> Vec<u32> {
    e.iter().zip(by).map(|(a, b)| a + b).collect()
}

/// Dimension of `C[x]/(∂W)` in weighted degree `m`, by counting monomials
/// minus the rank of the ideal's degree-`m` piece.
pub fn jacobi_quotient_dim(lg: &LgPair, weights: &[u32], n: i64, m: i64) -> usize {
    let monos = exponents_of_degree(weights, m);
    let index: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = Vec::new();
    for (i, p) in lg.partials().iter().enumerate() {
        let terms = rational_terms(p);
        for e in exponents_of_degree(weights, m - (n - weights[i] as i64)) {
            let mut row = vec![q(0); monos.len()];
            for (t, c) in &terms {
                row[index[&shift(&e, t)]] += c;
            }
            rows.push(row);
        }
    }
    monos.len() - rank(rows)
}

/// Staircase count of the Milnor number for a quasi-homogeneous `W`:
/// the sum of graded quotient dimensions up to the socle degree
/// `Σ(N - 2w_i)`, checking that the quotient is one-dimensional there and
/// vanishes just above it.
pub fn staircase_milnor(lg: &LgPair) -> usize {
    let qh = lg.quasi_homogeneity().expect("quasi-homogeneous");
    let n = qh.degree as i64;
    let top: i64 = qh.weights.iter().map(|&w| n - 2 * w as i64).sum();
    assert_eq!(jacobi_quotient_dim(lg, &qh.weights, n, top), 1, "socle");
    assert_eq!(jacobi_quotient_dim(lg, &qh.weights, n, top + 1), 0);
    (0..=top).map(|m| jacobi_quotient_dim(lg, &qh.weights, n, m)).sum()
}

/// `μ = Π(N/w_i - 1)` for quasi-homogeneous isolated singularities.
pub fn weight_formula_milnor(lg: &LgPair) -> Q {
    let qh = lg.quasi_homogeneity().expect("quasi-homogeneous");
    qh.weights.iter().map(|&w| Q::new(BigInt::from(qh.degree), BigInt::from(w)) - q(1)).product()
}

fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << d).filter(|s| s.count_ones() as usize == k).map(|s| (0..d).filter(|j| s >> j & 1 == 1).collect()).collect()
}

/// Basis of polyvector fields `x^α ∂_I` with `|I| = k` in internal degree `m`.
fn koszul_basis(weights: &[u32], n: i64, k: usize, m: i64) -> Vec<(Vec<u32>, Vec<usize>)> {
    let mut out = Vec::new();
    for set in subsets(weights.len(), k) {
        let shift: i64 = set.iter().map(|&j| n - weights[j] as i64).sum();
        for e in exponents_of_degree(weights, m - shift) {
            out.push((e, set.clone()));
        }
    }
    out
}

/// Matrix (rows = source basis) of contraction with `dW` from wedge degree
/// `k` to `k - 1` in internal degree `m`.
fn contraction_rows(lg: &LgPair, weights: &[u32], n: i64, k: usize, m: i64) -> (usize, Vec<Vec<Q>>) {
    let src = koszul_basis(weights, n, k, m);
    let tgt = if k == 0 { Vec::new() } else { koszul_basis(weights, n, k - 1, m) };
    let index: BTreeMap<&(Vec<u32>, Vec<usize>), usize> = tgt.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let partials: Vec<_> = lg.partials().iter().map(rational_terms).collect();
    let rows = src
        .iter()
        .map(|(e, set)| {
            let mut row = vec![q(0); tgt.len()];
            for (r, &j) in set.iter().enumerate() {
                let rest: Vec<usize> = set.iter().copied().filter(|&x| x != j).collect();
                let sign = if r % 2 == 0 { q(1) } else { q(-1) };
                for (t, c) in &partials[j] {
                    row[index[&(shift(e, t), rest.clone())]] += &sign * c;
                }
            }
            row
        })
        .collect();
    (tgt.len(), rows)
}

/// `dim H^{-k}` of the Koszul complex in internal degree `m`.
pub fn koszul_dim_oracle(lg: &LgPair, k: usize, m: i64) -> usize {
    let qh = lg.quasi_homogeneity().expect("quasi-homogeneous");
    let (w, n) = (&qh.weights, qh.degree as i64);
    let dim = koszul_basis(w, n, k, m).len();
    let (_, out_rows) = contraction_rows(lg, w, n, k, m);
    let rank_out = if k == 0 { 0 } else { rank(out_rows) };
    let rank_in = if k == lg.dimension() { 0 } else { rank(contraction_rows(lg, w, n, k + 1, m).1) };
    dim - rank_out - rank_in
}

/// Whether `Σ p_I ∂_I` (all `|I| = k`, homogeneous of degree `m`) is a
/// cocycle and not a coboundary, by raw ranks.
pub fn koszul_nonbounding_oracle(lg: &LgPair, k: usize, m: i64, components: &[(Vec<usize>, Polynomial)]) -> bool {
    let qh = lg.quasi_homogeneity().expect("quasi-homogeneous");
    let (w, n) = (&qh.weights, qh.degree as i64);
    let basis = koszul_basis(w, n, k, m);
    let index: BTreeMap<&(Vec<u32>, Vec<usize>), usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut v = vec![q(0); basis.len()];
    for (set, p) in components {
        for (e, c) in rational_terms(p) {
            v[index[&(e, set.clone())]] += c;
        }
    }
    // cocycle: v times the contraction matrix vanishes
    let (tgt_len, rows) = contraction_rows(lg, w, n, k, m);
    let image_of_v: Vec<Q> =
        (0..tgt_len).map(|j| rows.iter().zip(&v).fold(q(0), |acc, (row, x)| acc + &row[j] * x)).collect();
    if k > 0 && image_of_v.iter().any(|x| !x.is_zero()) {
        return false;
    }
    let bounding = if k == lg.dimension() { Vec::new() } else { contraction_rows(lg, w, n, k + 1, m).1 };
    let before = if bounding.is_empty() { 0 } else { rank(bounding.clone()) };
    let mut with_v = bounding;
    with_v.push(v);
    rank(with_v) > before
}

/// A rank-one factorization `x^a · x^b = x^n` in one variable, with `D01`
/// (even to odd) `x^a` and `D10` (odd to even) `x^b`.
#[derive(Clone, Copy, Debug)]
pub struct RankOne {
    pub a: u32,
    pub b: u32,
}

impl RankOne {
    /// Exponent of the entry of `D` in position `(i, j)`; basis 0 even, 1 odd.
    fn entry(self, i: usize, j: usize) -> Option<u32> {
        match (i, j) {
            (1, 0) => Some(self.a),
            (0, 1) => Some(self.b),
            _ => None,
        }
    }

    /// Doubled degrees from `2·deg D_ij = N + q_j - q_i`, normalized `q_0 = 0`.
    fn grading(self) -> [i64; 2] {
        let n = (self.a + self.b) as i64;
        [0, n - 2 * self.a as i64]
    }
}

/// Read the exponents off a rank-one one-variable factorization.
pub fn rank_one_of(f: &MatrixFactorization) -> RankOne {
    assert_eq!((f.rank0(), f.rank1()), (1, 1));
    let exp = |p: &Polynomial| {
        let (m, c) = p.leading_term().expect("nonzero");
        assert!(c.is_one() && p.num_terms() == 1);
        m.exponents()[0]
    };
    RankOne { a: exp(f.d01().get(0, 0)), b: exp(f.d10().get(0, 0)) }
}

/// Slots `(target row, source column)` of a morphism of the given parity.
fn slots(parity: Parity) -> [(usize, usize); 2] {
    match parity {
        Parity::Even => [(0, 0), (1, 1)],
        Parity::Odd => [(1, 0), (0, 1)],
    }
}

/// Coordinates of the morphism space of parity `κ` and doubled degree `δ`:
/// one monomial `x^e` per slot with `2e + q2_i - q1_j = δ`.
fn hom_piece(s: RankOne, t: RankOne, parity: Parity, delta: i64) -> Vec<(usize, usize, u32)> {
    let (q1, q2) = (s.grading(), t.grading());
    slots(parity)
        .into_iter()
        .filter_map(|(i, j)| {
            let twice = delta - q2[i] + q1[j];
            (twice >= 0 && twice % 2 == 0).then(|| (i, j, (twice / 2) as u32))
        })
        .collect()
}

/// Matrix of `d(f) = D2 f - (-1)^κ f D1` from the `(κ, δ)` piece to the
/// `(κ+1, δ+N)` piece, rows indexed by source coordinates.
fn hom_d_rows(s: RankOne, t: RankOne, parity: Parity, delta: i64) -> Vec<Vec<Q>> {
    let n = (s.a + s.b) as i64;
    let src = hom_piece(s, t, parity, delta);
    let tgt = hom_piece(s, t, parity.flip(), delta + n);
    let sign = if parity == Parity::Even { q(-1) } else { q(1) };
    src.iter()
        .map(|&(i, j, e)| {
            let mut out: BTreeMap<(usize, usize, u32), Q> = BTreeMap::new();
            // D2 ∘ E_ij: row k of D2 hits row i
            for k in 0..2 {
                if let Some(x) = t.entry(k, i) {
                    *out.entry((k, j, e + x)).or_insert_with(|| q(0)) += q(1);
                }
            }
            // E_ij ∘ D1: column j of E meets row j of D1
            for l in 0..2 {
                if let Some(x) = s.entry(j, l) {
                    *out.entry((i, l, e + x)).or_insert_with(|| q(0)) += sign.clone();
                }
            }
            tgt.iter().map(|key| out.get(key).cloned().unwrap_or_else(|| q(0))).collect()
        })
        .collect()
}

fn matrix_rank(rows: Vec<Vec<Q>>) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        0
    } else {
        rank(rows)
    }
}

/// `dim H^κ` of `Hom(s, t)` in doubled degree `δ` by raw coefficient ranks.
pub fn hom_dim_oracle(s: RankOne, t: RankOne, parity: Parity, delta: i64) -> usize {
    let n = (s.a + s.b) as i64;
    let dim = hom_piece(s, t, parity, delta).len();
    let out = matrix_rank(hom_d_rows(s, t, parity, delta));
    let inc = matrix_rank(hom_d_rows(s, t, parity.flip(), delta - n));
    dim - out - inc
}

// ---------------------------------------------------------------------------
// random instances

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = rng.gen_range(-3..=3);
    if rng.gen_bool(0.2) {
        Scalar::new(q(re), q(rng.gen_range(-2..=2)))
    } else {
        Scalar::from_int(re)
    }
}

/// Random polynomial in `nvars` variables of total degree at most `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        (0..terms).map(|_| {
            let mut e = vec![0u32; nvars];
            let total = rng.gen_range(0..=deg);
            for _ in 0..total {
                e[rng.gen_range(0..nvars)] += 1;
            }
            (Monomial::new(e), random_scalar(rng))
        }),
    )
}

fn random_nonconstant(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> Polynomial {
    loop {
        let p = random_poly(rng, nvars, deg, 3);
        if !p.is_constant() {
            return p;
        }
    }
}

/// A random superpotential `W = Σ a_i b_i` together with the factor pairs.
pub struct RandomLg {
    pub lg: LgPair,
    pub pairs: Vec<(Polynomial, Polynomial)>,
}

pub fn random_lg(rng: &mut ChaCha8Rng) -> RandomLg {
    loop {
        let d = rng.gen_range(1..=2);
        let vars: Vec<&str> = ["x", "y"][..d].to_vec();
        let npairs = rng.gen_range(1..=2);
        let pairs: Vec<(Polynomial, Polynomial)> =
            (0..npairs).map(|_| (random_nonconstant(rng, d, 2), random_nonconstant(rng, d, 2))).collect();
        let mut w = Polynomial::zero(d);
        for (a, b) in &pairs {
            w = w.try_add(&a.try_mul(b).unwrap()).unwrap();
        }
        if w.is_zero() {
            continue;
        }
        let ring = lgtft::poly::Ring::new(vars.iter().copied());
        let lg = LgPair::new(ring, w, None).unwrap();
        return RandomLg { lg, pairs };
    }
}

/// Upper unitriangular polynomial matrix with entries of degree at most 1,
/// and its inverse.
fn unipotent(rng: &mut ChaCha8Rng, n: usize, nvars: usize) -> (PolyMatrix, PolyMatrix) {
    let mut u = PolyMatrix::identity(n, nvars);
    let mut inv = PolyMatrix::identity(n, nvars);
    for i in 0..n {
        for j in i + 1..n {
            let mut e = PolyMatrix::identity(n, nvars);
            let p = random_poly(rng, nvars, 1, 2);
            e.set(i, j, p.clone());
            let mut e_inv = PolyMatrix::identity(n, nvars);
            e_inv.set(i, j, p.scale(&Scalar::from_int(-1)));
            u = u.mul(&e).unwrap();
            inv = e_inv.mul(&inv).unwrap();
        }
    }
    (u, inv)
}

/// A random factorization of `rl.lg`: the Koszul factorization of the pairs
/// with random swaps, conjugated by a random even automorphism.
pub fn random_brane(rng: &mut ChaCha8Rng, rl: &RandomLg) -> MatrixFactorization {
    let pairs: Vec<_> =
        rl.pairs.iter().map(|(a, b)| if rng.gen_bool(0.5) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }).collect();
    let k = koszul_factorization(&rl.lg, &pairs).unwrap();
    let nvars = rl.lg.dimension();
    let (u0, u0i) = unipotent(rng, k.rank0(), nvars);
    let (u1, u1i) = unipotent(rng, k.rank1(), nvars);
    let d01 = u1.mul(k.d01()).unwrap().mul(&u0i).unwrap();
    let d10 = u0.mul(k.d10()).unwrap().mul(&u1i).unwrap();
    make_factorization(&rl.lg, k.rank0(), k.rank1(), d01, d10).unwrap()
}

/// Random morphism `source → target` of the given parity, entries of degree ≤ 4.
pub fn random_morphism(
    rng: &mut ChaCha8Rng,
    source: &MatrixFactorization,
    target: &MatrixFactorization,
    parity: Parity,
) -> PolyMatrix {
    let hc = lgtft::matfact::hom_complex(source, target).unwrap();
    let mut f = hc.zero();
    let nvars = source.lg().dimension();
    for (i, j) in hc.slots(parity) {
        if rng.gen_bool(0.7) {
            f.set(i, j, random_poly(rng, nvars, 4, 3));
        }
    }
    f
}

pub fn random_parity(rng: &mut ChaCha8Rng) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Koszul branes `(x^p, x^{n-p})` of `W = x^n`.
pub fn xn_branes(n: u32) -> (LgPair, Vec<(String, MatrixFactorization)>) {
    let lg = LgPair::parse(&["x"], &format!("x^{n}"), None).unwrap();
    let r = lg.ring();
    let branes = (1..n)
        .map(|p| {
            let pair = (r.parse(&format!("x^{p}")).unwrap(), r.parse(&format!("x^{}", n - p)).unwrap());
            (format!("x^{p}"), koszul_factorization(&lg, &[pair]).unwrap())
        })
        .collect();
    (lg, branes)
}

// ---------------------------------------------------------------------------
// seeded invariant checks, shared by the property suite and acceptance

use lgtft::matfact::{compose_classes, default_degree_bound, hom_cohomology, hom_complex, MorphismClass};
use rand::SeedableRng;

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// `D² = W·Id` for a random factorization, checked by direct multiplication.
pub fn check_d_squared_is_w(seed: u64) -> Result<(), String> {
    let mut r = seeded(seed);
    let rl = random_lg(&mut r);
    let a = random_brane(&mut r, &rl);
    let d = a.differential();
    let w = PolyMatrix::scalar(a.size(), rl.lg.superpotential());
    ensure(a.squares_to_w() && d.mul(d).unwrap() == w, || format!("D^2 != W for W = {}", rl.lg.display(rl.lg.superpotential())))
}

/// `d(d(f)) = 0` on a random morphism between random factorizations.
pub fn check_hom_d_squared(seed: u64) -> Result<(), String> {
    let mut r = seeded(seed);
    let rl = random_lg(&mut r);
    let (a, b) = (random_brane(&mut r, &rl), random_brane(&mut r, &rl));
    let hc = hom_complex(&a, &b).unwrap();
    let parity = random_parity(&mut r);
    let f = random_morphism(&mut r, &a, &b, parity);
    let df = hc.d(&f, parity).unwrap();
    ensure(hc.d(&df, parity.flip()).unwrap().is_zero(), || "d^2 f != 0".into())
}

/// `d(g∘f) = d(g)∘f + (-1)^|g| g∘d(f)`.
pub fn check_leibniz(seed: u64) -> Result<(), String> {
    let mut r = seeded(seed);
    let rl = random_lg(&mut r);
    let (a1, a2, a3) = (random_brane(&mut r, &rl), random_brane(&mut r, &rl), random_brane(&mut r, &rl));
    let (pf, pg) = (random_parity(&mut r), random_parity(&mut r));
    let f = random_morphism(&mut r, &a1, &a2, pf);
    let g = random_morphism(&mut r, &a2, &a3, pg);
    let (h12, h23, h13) = (hom_complex(&a1, &a2).unwrap(), hom_complex(&a2, &a3).unwrap(), hom_complex(&a1, &a3).unwrap());
    let lhs = h13.d(&g.mul(&f).unwrap(), pf + pg).unwrap();
    let dg_f = h23.d(&g, pg).unwrap().mul(&f).unwrap();
    let g_df = g.mul(&h12.d(&f, pf).unwrap()).unwrap().scale(&Scalar::from_int(pg.sign()));
    ensure(lhs == dg_f.add(&g_df).unwrap(), || "Leibniz rule fails".into())
}

/// Graded instances for class-level checks: `W = x^n` or `x^3 + y^3` with
/// Koszul branes.
pub fn graded_setting(r: &mut ChaCha8Rng) -> (LgPair, Vec<MatrixFactorization>) {
    if r.gen_bool(0.7) {
        let n = r.gen_range(2..=5);
        let (lg, branes) = xn_branes(n);
        (lg, branes.into_iter().map(|(_, b)| b).collect())
    } else {
        let lg = LgPair::parse(&["x", "y"], "x^3+y^3", None).unwrap();
        let ring = lg.ring();
        let branes = [(1, 1), (1, 2), (2, 1)]
            .iter()
            .map(|&(p, q)| {
                let pairs = [
                    (ring.parse(&format!("x^{p}")).unwrap(), ring.parse(&format!("x^{}", 3 - p)).unwrap()),
                    (ring.parse(&format!("y^{q}")).unwrap(), ring.parse(&format!("y^{}", 3 - q)).unwrap()),
                ];
                koszul_factorization(&lg, &pairs).unwrap()
            })
            .collect();
        (lg, branes)
    }
}

/// Class coordinates are unchanged by adding a random coboundary, and
/// multiplication by any `∂_j W` kills the class.
pub fn check_representative_independence(seed: u64) -> Result<(), String> {
    let mut r = seeded(seed);
    let (lg, branes) = graded_setting(&mut r);
    let a = &branes[r.gen_range(0..branes.len())];
    let b = &branes[r.gen_range(0..branes.len())];
    let h = hom_cohomology(a, b, default_degree_bound(a, b)).unwrap();
    let hc = hom_complex(a, b).unwrap();
    let parity = random_parity(&mut r);
    let mut f = hc.zero();
    let mut expected = vec![Scalar::zero(); h.dim()];
    for (k, c) in h.basis().iter().enumerate() {
        if c.parity == parity {
            let s = random_scalar(&mut r);
            f = f.add(&c.representative.scale(&s)).unwrap();
            expected[k] = s;
        }
    }
    let t = random_morphism(&mut r, a, b, parity.flip());
    let shifted = f.add(&hc.d(&t, parity.flip()).unwrap()).unwrap();
    ensure(h.coordinates(&shifted, parity).unwrap() == expected, || "coordinates depend on the representative".into())?;
    for dw in lg.partials() {
        let g = shifted.mul_poly(&dw);
        ensure(h.coordinates(&g, parity).unwrap().iter().all(Scalar::is_zero), || "dW * f is not exact".into())?;
    }
    Ok(())
}

/// Composition of classes does not depend on the chosen representatives.
/// Returns `Ok(false)` when the drawn Hom spaces are empty.
pub fn check_composition_on_classes(seed: u64) -> Result<bool, String> {
    let mut r = seeded(seed);
    let (_, branes) = graded_setting(&mut r);
    let pick = |r: &mut ChaCha8Rng| &branes[r.gen_range(0..branes.len())];
    let (a, b, c) = (pick(&mut r), pick(&mut r), pick(&mut r));
    let hab = hom_cohomology(a, b, default_degree_bound(a, b)).unwrap();
    let hbc = hom_cohomology(b, c, default_degree_bound(b, c)).unwrap();
    let hac = hom_cohomology(a, c, default_degree_bound(a, c)).unwrap();
    if hab.dim() == 0 || hbc.dim() == 0 {
        return Ok(false);
    }
    let f = &hab.basis()[r.gen_range(0..hab.dim())];
    let g = &hbc.basis()[r.gen_range(0..hbc.dim())];
    let base = hac.class_coordinates(&compose_classes(g, f).unwrap()).unwrap();
    let (cab, cbc) = (hom_complex(a, b).unwrap(), hom_complex(b, c).unwrap());
    let tf = random_morphism(&mut r, a, b, f.parity.flip());
    let tg = random_morphism(&mut r, b, c, g.parity.flip());
    let f2 = f.representative.add(&cab.d(&tf, f.parity.flip()).unwrap()).unwrap();
    let g2 = g.representative.add(&cbc.d(&tg, g.parity.flip()).unwrap()).unwrap();
    let f2 = MorphismClass::from_cocycle(a, b, f.parity, f2).unwrap();
    let g2 = MorphismClass::from_cocycle(b, c, g.parity, g2).unwrap();
    let moved = hac.class_coordinates(&compose_classes(&g2, &f2).unwrap()).unwrap();
    ensure(moved == base, || "composition depends on representatives".into())?;
    Ok(true)
}
