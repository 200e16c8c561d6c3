//! Exact linear algebra over ℚ(i).
//!
//! [`Matrix`] is a dense matrix with Gauss-Jordan elimination, used for small
//! systems (pairings, traces, change of basis). [`Echelon`] is an incremental
//! sparse row-echelon basis used for the degreewise cohomology computations,
//! where matrices are large but have only a handful of entries per column.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!("column {j} has length {}, expected {rows}", col.len())));
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("{}x{} * vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let t = &f * &m[(r, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!("rhs of length {} for {} rows", b.len(), self.rows)));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }
}

/// Result of [`kernel_and_image`].
#[derive(Debug, Clone)]
pub struct KernelImage {
    pub kernel: Vec<Vec<Scalar>>,
    pub image: Vec<Vec<Scalar>>,
}

/// Exact bases of kernel and image. Rank-nullity is asserted.
pub fn kernel_and_image(m: &Matrix) -> KernelImage {
    let (_, pivots) = m.rref();
    let kernel = m.kernel();
    let image: Vec<_> = pivots.iter().map(|&c| m.column(c)).collect();
    assert_eq!(kernel.len() + image.len(), m.cols(), "rank-nullity violated");
    KernelImage { kernel, image }
}

/// Sparse vector as sorted `(index, value)` pairs without zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec(Vec<(usize, Scalar)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Scalar::one())])
    }

    pub fn from_map(m: BTreeMap<usize, Scalar>) -> Self {
        SparseVec(m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec(v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, v) in &self.0 {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.0.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(p) => self.0[p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    pub fn add_scaled(&self, o: &SparseVec, c: &Scalar) -> SparseVec {
        let mut m: BTreeMap<usize, Scalar> = self.0.iter().cloned().collect();
        axpy(&mut m, o, c);
        SparseVec::from_map(m)
    }

    pub fn into_inner(self) -> Vec<(usize, Scalar)> {
        self.0
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut m = BTreeMap::new();
        for (i, v) in iter {
            let e: &mut Scalar = m.entry(i).or_default();
            *e += &v;
        }
        SparseVec::from_map(m)
    }
}

fn axpy(acc: &mut BTreeMap<usize, Scalar>, v: &SparseVec, c: &Scalar) {
    for (i, x) in &v.0 {
        let t = x * c;
        match acc.entry(*i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(t);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &t;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vec: SparseVec,
    combo: SparseVec,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug)]
pub enum Insert {
    /// The vector was independent; index of the new row.
    Independent(usize),
    /// The vector was dependent. The payload is the label combination that
    /// reduces to zero, i.e. a linear relation among inserted labels.
    Dependent(SparseVec),
}

/// Incremental sparse echelon basis with optional label tracking.
///
/// Every stored row carries a combination of caller-provided labels; reducing
/// a vector yields both the canonical remainder (no entries in pivot columns)
/// and the label combination subtracted along the way.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<EchelonRow>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduce `v`, returning `(remainder, combo)` with
    /// `v = remainder + (span element whose label combination is combo)`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut work: BTreeMap<usize, Scalar> = v.0.iter().cloned().collect();
        let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).find(|(c, _)| self.pivots.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = next else { break };
            let row = &self.rows[self.pivots[&col]];
            axpy(&mut work, &row.vec, &-&coeff);
            if !row.combo.is_zero() {
                axpy(&mut combo, &row.combo, &coeff);
            }
            cursor = col + 1;
        }
        (SparseVec::from_map(work), SparseVec::from_map(combo))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Insert `v` carrying the label combination `label`.
    pub fn insert(&mut self, v: &SparseVec, label: SparseVec) -> Insert {
        let (rem, combo) = self.reduce(v);
        // label - combo is the label combination of the remainder
        let own = label.add_scaled(&combo, &Scalar::from_int(-1));
        if rem.is_zero() {
            return Insert::Dependent(own);
        }
        let (lead_col, lead) = rem.0[0].clone();
        let inv = lead.inv().unwrap();
        let idx = self.rows.len();
        self.rows.push(EchelonRow { vec: rem.scale(&inv), combo: own.scale(&inv) });
        self.pivots.insert(lead_col, idx);
        Insert::Independent(idx)
    }

    pub fn insert_untracked(&mut self, v: &SparseVec) -> bool {
        matches!(self.insert(v, SparseVec::new()), Insert::Independent(_))
    }
}

/// Rank of a family of sparse column vectors.
pub fn sparse_rank<'a>(cols: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut e = Echelon::new();
    for c in cols {
        e.insert_untracked(c);
    }
    e.rank()
}

/// Kernel basis of the map sending basis vector `j` to `cols[j]`.
pub fn sparse_kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut ker = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Insert::Dependent(rel) = e.insert(c, SparseVec::unit(j)) {
            ker.push(rel);
        }
    }
    ker
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_and_zero() {
        let ki = kernel_and_image(&Matrix::identity(3));
        assert_eq!((ki.kernel.len(), ki.image.len()), (0, 3));
        let kz = kernel_and_image(&Matrix::zeros(2, 2));
        assert_eq!((kz.kernel.len(), kz.image.len()), (2, 0));
    }

    #[test]
    fn single_relation_with_unit() {
        let m = Matrix::from_rows(vec![vec![s(1), Scalar::i()]]).unwrap();
        let ki = kernel_and_image(&m);
        assert_eq!(ki.kernel, vec![vec![-Scalar::i(), s(1)]]);
        assert_eq!(ki.image.len(), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        let x = m.solve(&[s(3), s(2)]).unwrap().unwrap();
        assert_eq!(x, vec![s(1), s(1)]);
        let sing = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(1)]]).unwrap();
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[s(1), s(2)]).unwrap().is_none());
    }

    #[test]
    fn sparse_matches_dense() {
        let cols: Vec<Vec<Scalar>> = vec![
            vec![s(1), s(0), s(2)],
            vec![s(0), s(1), s(1)],
            vec![s(1), s(1), s(3)],
            vec![s(2), s(0), s(4)],
        ];
        let m = Matrix::from_columns(3, &cols).unwrap();
        let sparse: Vec<SparseVec> = cols.iter().map(|c| SparseVec::from_dense(c)).collect();
        assert_eq!(sparse_rank(&sparse), m.rank());
        let ker = sparse_kernel(&sparse);
        assert_eq!(ker.len(), 2);
        for k in ker {
            let v = m.mul_vec(&k.to_dense(4)).unwrap();
            assert!(v.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn reduce_tracks_labels() {
        let mut e = Echelon::new();
        let a = SparseVec::from_dense(&[s(1), s(1), s(0)]);
        let b = SparseVec::from_dense(&[s(0), s(1), s(1)]);
        e.insert(&a, SparseVec::unit(0));
        e.insert(&b, SparseVec::unit(1));
        let v = SparseVec::from_dense(&[s(2), s(5), s(3)]);
        let (rem, combo) = e.reduce(&v);
        assert!(rem.is_zero());
        assert_eq!(combo.to_dense(2), vec![s(2), s(3)]);
    }
}
