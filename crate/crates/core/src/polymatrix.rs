use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use crate::scalar::Scalar;

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![Polynomial::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        PolyMatrix::scalar(n, &Polynomial::one(nvars))
    }

    /// `p · Id_n`.
    pub fn scalar(n: usize, p: &Polynomial) -> Self {
        let mut m = PolyMatrix::zeros(n, n, p.nvars());
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged polynomial matrix".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if let Some(p) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::RingMismatch(nvars, p.nvars()));
        }
        Ok(PolyMatrix { rows: r, cols: c, nvars, entries })
    }

    /// Parse a matrix of polynomial strings.
    pub fn parse<S: AsRef<str>>(ring: &Ring, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| ring.parse(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring.nvars(), parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Polynomial::degree).max()
    }

    fn check_same(&self, o: &PolyMatrix) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        if self.nvars != o.nvars {
            return Err(Error::RingMismatch(self.nvars, o.nvars));
        }
        Ok(())
    }

    pub fn add(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(o)?;
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect();
        Ok(self.with_entries(entries))
    }

    pub fn sub(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(o)?;
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect();
        Ok(self.with_entries(entries))
    }

    fn with_entries(&self, entries: Vec<Polynomial>) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, entries }
    }

    pub fn mul(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        if self.nvars != o.nvars {
            return Err(Error::RingMismatch(self.nvars, o.nvars));
        }
        let mut out = PolyMatrix::zeros(self.rows, o.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        self.with_entries(self.entries.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &Polynomial) -> PolyMatrix {
        self.with_entries(self.entries.iter().map(|e| e * p).collect())
    }

    pub fn partial_derivative(&self, k: usize) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|p| p.partial_derivative(k)).collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    pub fn trace(&self) -> Polynomial {
        let mut t = Polynomial::zero(self.nvars);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Copy `block` into position `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(rows, cols, self.nvars);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn to_strings(&self, ring: &Ring) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| ring.display(self.get(r, c)).to_string()).collect())
            .collect()
    }
}
