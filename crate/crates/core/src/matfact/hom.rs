use crate::error::{Error, Result};
use crate::graded::Parity;
use crate::polymatrix::PolyMatrix;

use super::factorization::MatrixFactorization;

/// `d(f) = D₂∘f - (-1)^κ f∘D₁` for `f` of parity `κ`.
pub fn defect_differential(d1: &PolyMatrix, d2: &PolyMatrix, f: &PolyMatrix, parity: Parity) -> PolyMatrix {
    let left = d2.mul(f).expect("target differential shape");
    let right = f.mul(d1).expect("source differential shape");
    match parity {
        Parity::Even => left.sub(&right).unwrap(),
        Parity::Odd => left.add(&right).unwrap(),
    }
}

/// The morphism complex between two factorizations of the same `W`.
///
/// A morphism is a `size(target) × size(source)` polynomial matrix; its
/// parity decides which blocks may be nonzero.
#[derive(Clone, Debug)]
pub struct HomComplex {
    source: MatrixFactorization,
    target: MatrixFactorization,
}

pub fn hom_complex(a1: &MatrixFactorization, a2: &MatrixFactorization) -> Result<HomComplex> {
    if a1.lg() != a2.lg() {
        return Err(Error::LgMismatch);
    }
    let hc = HomComplex { source: a1.clone(), target: a2.clone() };
    for parity in [Parity::Even, Parity::Odd] {
        for (i, j) in hc.slots(parity) {
            let mut e = hc.zero();
            e.set(i, j, crate::poly::Polynomial::one(a1.lg().dimension()));
            let de = hc.d_unchecked(&e, parity);
            assert!(hc.d_unchecked(&de, parity.flip()).is_zero(), "d^2 != 0 on a basis element");
        }
    }
    Ok(hc)
}

impl HomComplex {
    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    /// Entry positions `(row in target, column in source)` allowed for `parity`.
    pub fn slots(&self, parity: Parity) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.target.size() {
            for j in 0..self.source.size() {
                if self.target.basis_parity(i) + self.source.basis_parity(j) == parity {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Rank of the even or odd part as a free module.
    pub fn rank(&self, parity: Parity) -> usize {
        self.slots(parity).len()
    }

    pub fn zero(&self) -> PolyMatrix {
        PolyMatrix::zeros(self.target.size(), self.source.size(), self.source.lg().dimension())
    }

    /// Whether `f` is a morphism of the given parity (shape and block pattern).
    pub fn admits(&self, f: &PolyMatrix, parity: Parity) -> bool {
        if f.rows() != self.target.size() || f.cols() != self.source.size() {
            return false;
        }
        (0..f.rows()).all(|i| {
            (0..f.cols()).all(|j| {
                f.get(i, j).is_zero() || self.target.basis_parity(i) + self.source.basis_parity(j) == parity
            })
        })
    }

    fn d_unchecked(&self, f: &PolyMatrix, parity: Parity) -> PolyMatrix {
        defect_differential(self.source.differential(), self.target.differential(), f, parity)
    }

    pub fn d(&self, f: &PolyMatrix, parity: Parity) -> Result<PolyMatrix> {
        if !self.admits(f, parity) {
            return Err(Error::Shape(format!(
                "not a {parity} morphism {}x{}",
                self.target.size(),
                self.source.size()
            )));
        }
        Ok(self.d_unchecked(f, parity))
    }

    pub fn is_cocycle(&self, f: &PolyMatrix, parity: Parity) -> Result<bool> {
        Ok(self.d(f, parity)?.is_zero())
    }
}
