use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graded::Parity;
use crate::lg::LgPair;
use crate::poly::Polynomial;
use crate::polymatrix::PolyMatrix;

/// A matrix factorization `(P⁰ ⊕ P¹, D)` of `W` with free summands.
///
/// The full odd endomorphism is stored as a square matrix on
/// `P⁰ ⊕ P¹` (even basis vectors first):
///
/// ```text
/// D = [ 0    D10 ]
///     [ D01  0   ]
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    lg: LgPair,
    rank0: usize,
    rank1: usize,
    d01: PolyMatrix,
    d10: PolyMatrix,
    d: PolyMatrix,
    grading: Option<Vec<i64>>,
}

fn check_shape(m: &PolyMatrix, rows: usize, cols: usize, name: &str, nvars: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::Shape(format!("{name} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    if m.nvars() != nvars {
        return Err(Error::RingMismatch(nvars, m.nvars()));
    }
    Ok(())
}

fn check_square(lg: &LgPair, prod: &PolyMatrix, block: &'static str) -> Result<()> {
    let w = lg.superpotential();
    for r in 0..prod.rows() {
        for c in 0..prod.cols() {
            let expected = if r == c { w.clone() } else { Polynomial::zero(w.nvars()) };
            let found = prod.get(r, c);
            if *found != expected {
                return Err(Error::NotAFactorization {
                    block,
                    row: r + 1,
                    col: c + 1,
                    found: lg.display(found),
                    expected: lg.display(&expected),
                });
            }
        }
    }
    Ok(())
}

/// Validate `D10·D01 = W·Id` and `D01·D10 = W·Id` and build the object.
pub fn make_factorization(
    lg: &LgPair,
    rank0: usize,
    rank1: usize,
    d01: PolyMatrix,
    d10: PolyMatrix,
) -> Result<MatrixFactorization> {
    let nvars = lg.dimension();
    check_shape(&d01, rank1, rank0, "D01", nvars)?;
    check_shape(&d10, rank0, rank1, "D10", nvars)?;
    check_square(lg, &d10.mul(&d01)?, "D10*D01")?;
    check_square(lg, &d01.mul(&d10)?, "D01*D10")?;
    let mut d = PolyMatrix::zeros(rank0 + rank1, rank0 + rank1, nvars);
    d.put_block(0, rank0, &d10);
    d.put_block(rank0, 0, &d01);
    let grading = infer_grading(lg, &d);
    Ok(MatrixFactorization { lg: lg.clone(), rank0, rank1, d01, d10, d, grading })
}

/// Doubled internal degrees `q` of the basis vectors making `D` homogeneous of
/// doubled degree `N`: every nonzero entry satisfies
/// `2·deg_w(D_ij) = N + q_j - q_i`. Each connected block is normalized to
/// start at 0. `None` when `W` is not quasi-homogeneous or no such `q` exists.
fn infer_grading(lg: &LgPair, d: &PolyMatrix) -> Option<Vec<i64>> {
    let qh = lg.quasi_homogeneity()?;
    let n = qh.degree as i64;
    let size = d.rows();
    // edges (neighbour, offset) meaning q_neighbour = q_self + offset
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); size];
    for i in 0..size {
        for j in 0..size {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let deg = e.homogeneous_degree(&qh.weights)? as i64;
            let off = n - 2 * deg; // q_i = q_j + off
            adj[j].push((i, off));
            adj[i].push((j, -off));
        }
    }
    let mut q: Vec<Option<i64>> = vec![None; size];
    for start in 0..size {
        if q[start].is_some() {
            continue;
        }
        q[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let qv = q[v].unwrap();
            for &(u, off) in &adj[v] {
                match q[u] {
                    None => {
                        q[u] = Some(qv + off);
                        queue.push_back(u);
                    }
                    Some(qu) if qu != qv + off => return None,
                    Some(_) => {}
                }
            }
        }
    }
    q.into_iter().collect()
}

fn sign_before(set: u64, i: usize) -> bool {
    (set & ((1u64 << i) - 1)).count_ones() % 2 == 1
}

/// Tensor product of the rank-one factorizations `(a_i, b_i)`, realized on the
/// exterior algebra of `ℂ^n` with `D = Σ a_i ε_i∧ + b_i ι_i`.
///
/// Basis: even subsets, then odd subsets, each ordered by size and then
/// lexicographically.
pub fn koszul_factorization(lg: &LgPair, pairs: &[(Polynomial, Polynomial)]) -> Result<MatrixFactorization> {
    let nvars = lg.dimension();
    let mut sum = Polynomial::zero(nvars);
    for (a, b) in pairs {
        sum = &sum + &a.try_mul(b)?;
    }
    if sum != *lg.superpotential() {
        return Err(Error::KoszulSumMismatch { found: lg.display(&sum), expected: lg.display(lg.superpotential()) });
    }
    let n = pairs.len();
    assert!(n < 63, "too many Koszul pairs");
    let mut subsets: Vec<u64> = (0..1u64 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones() % 2, s.count_ones(), (0..n).filter(|i| s >> i & 1 == 1).collect::<Vec<_>>()));
    let half = subsets.len() / 2;
    let pos = |s: u64| subsets.iter().position(|&t| t == s).unwrap();
    let size = subsets.len();
    let mut d = PolyMatrix::zeros(size, size, nvars);
    for (col, &s) in subsets.iter().enumerate() {
        for (i, (a, b)) in pairs.iter().enumerate() {
            let neg = sign_before(s, i);
            let (target, coeff) = if s >> i & 1 == 0 { (s | 1 << i, a) } else { (s & !(1 << i), b) };
            let row = pos(target);
            let term = if neg { -coeff } else { coeff.clone() };
            let cur = d.get(row, col).clone();
            d.set(row, col, &cur + &term);
        }
    }
    let (rank0, rank1) = if n == 0 { (1, 0) } else { (half, half) };
    let d01 = d.block(rank0, 0, rank1, rank0);
    let d10 = d.block(0, rank0, rank0, rank1);
    make_factorization(lg, rank0, rank1, d01, d10)
}

impl MatrixFactorization {
    pub fn lg(&self) -> &LgPair {
        &self.lg
    }

    pub fn rank0(&self) -> usize {
        self.rank0
    }

    pub fn rank1(&self) -> usize {
        self.rank1
    }

    pub fn size(&self) -> usize {
        self.rank0 + self.rank1
    }

    pub fn d01(&self) -> &PolyMatrix {
        &self.d01
    }

    pub fn d10(&self) -> &PolyMatrix {
        &self.d10
    }

    /// The full odd endomorphism on `P⁰ ⊕ P¹`.
    pub fn differential(&self) -> &PolyMatrix {
        &self.d
    }

    pub fn basis_parity(&self, i: usize) -> Parity {
        if i < self.rank0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Doubled internal degrees of the basis vectors, when `D` is homogeneous.
    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    /// Largest total degree of an entry of `D` (0 for the zero object).
    pub fn max_entry_degree(&self) -> u32 {
        self.d.max_degree().unwrap_or(0)
    }

    /// Largest weighted degree of an entry of `D` under `weights`.
    pub fn max_entry_weighted_degree(&self, weights: &[u32]) -> u64 {
        self.d.entries().iter().filter_map(|p| p.weighted_degree(weights)).max().unwrap_or(0)
    }

    /// `D² = W·Id`, re-checked.
    pub fn squares_to_w(&self) -> bool {
        let sq = self.d.mul(&self.d).unwrap();
        sq == PolyMatrix::scalar(self.size(), self.lg.superpotential())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lg(vars: &[&str], w: &str) -> LgPair {
        LgPair::parse(vars, w, None).unwrap()
    }

    fn pm(l: &LgPair, rows: &[&[&str]]) -> PolyMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        PolyMatrix::parse(l.ring(), &rows).unwrap()
    }

    #[test]
    fn rank_one_examples() {
        let l = lg(&["x"], "x^2");
        let a = make_factorization(&l, 1, 1, pm(&l, &[&["x"]]), pm(&l, &[&["x"]])).unwrap();
        assert!(a.squares_to_w());
        assert_eq!(a.grading(), Some(&[0, 0][..]));
        let l3 = lg(&["x"], "x^3");
        let b = make_factorization(&l3, 1, 1, pm(&l3, &[&["x"]]), pm(&l3, &[&["x^2"]])).unwrap();
        assert_eq!(b.grading(), Some(&[0, 1][..]));
    }

    #[test]
    fn violation_reports_entry() {
        let l = lg(&["x"], "x^3");
        let err = make_factorization(&l, 1, 1, pm(&l, &[&["x"]]), pm(&l, &[&["x"]])).unwrap_err();
        match err {
            Error::NotAFactorization { row, col, found, expected, .. } => {
                assert_eq!((row, col), (1, 1));
                assert_eq!(found, "x^2");
                assert_eq!(expected, "x^3");
            }
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(
            make_factorization(&l, 1, 1, pm(&l, &[&["x", "1"]]), pm(&l, &[&["x"]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn koszul_pairs() {
        let l = lg(&["x", "y"], "x^3+y^3");
        let r = l.ring();
        let pairs = vec![
            (r.parse("x").unwrap(), r.parse("x^2").unwrap()),
            (r.parse("y").unwrap(), r.parse("y^2").unwrap()),
        ];
        let a = koszul_factorization(&l, &pairs).unwrap();
        assert_eq!((a.rank0(), a.rank1()), (2, 2));
        assert!(a.squares_to_w());
        assert!(a.grading().is_some());

        let l1 = lg(&["x"], "x^3");
        let single = koszul_factorization(&l1, &[(l1.ring().parse("x").unwrap(), l1.ring().parse("x^2").unwrap())]).unwrap();
        assert_eq!(single.d01().to_strings(l1.ring()), vec![vec!["x"]]);
        assert_eq!(single.d10().to_strings(l1.ring()), vec![vec!["x^2"]]);

        let l2 = lg(&["x"], "x^2");
        let x = l2.ring().parse("x").unwrap();
        let zero_pair = koszul_factorization(&l2, &[(x.clone(), x.clone()), (x.clone(), Polynomial::zero(1))]).unwrap();
        assert_eq!(zero_pair.size(), 4);
        let bad = koszul_factorization(&l2, &[(x.clone(), Polynomial::one(1))]);
        assert!(matches!(bad, Err(Error::KoszulSumMismatch { .. })));
    }

    #[test]
    fn zero_object() {
        let l = lg(&["x"], "x^2");
        let z = make_factorization(&l, 0, 0, PolyMatrix::zeros(0, 0, 1), PolyMatrix::zeros(0, 0, 1)).unwrap();
        assert_eq!(z.size(), 0);
        assert!(z.squares_to_w());
    }
}
