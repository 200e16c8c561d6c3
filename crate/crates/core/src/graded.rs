//! Parity- and degree-graded finite-dimensional vector spaces and maps between them.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_and_image, KernelImage, Matrix};

/// An element of ℤ₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        self + Parity::Odd
    }

    /// `(-1)^(self * other)`.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::of((self.bit() + o.bit()) as i64)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// One homogeneous summand of a [`GradedVectorSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub parity: Parity,
    pub degree: Option<i64>,
    pub labels: Vec<String>,
}

/// A vector space with a basis split into homogeneous pieces. Basis vectors are
/// numbered consecutively across pieces in the order the pieces were added.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    pieces: Vec<GradedPiece>,
}

impl GradedVectorSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_piece(&mut self, parity: Parity, degree: Option<i64>, labels: Vec<String>) -> Result<()> {
        for l in &labels {
            if self.pieces.iter().flat_map(|p| &p.labels).any(|x| x == l) {
                return Err(Error::Shape(format!("duplicate basis label `{l}`")));
            }
        }
        if labels.iter().enumerate().any(|(i, l)| labels[..i].contains(l)) {
            return Err(Error::Shape("duplicate basis label within piece".into()));
        }
        self.pieces.push(GradedPiece { parity, degree, labels });
        Ok(())
    }

    pub fn pieces(&self) -> &[GradedPiece] {
        &self.pieces
    }

    pub fn dim(&self) -> usize {
        self.pieces.iter().map(|p| p.labels.len()).sum()
    }

    pub fn dim_of(&self, parity: Parity) -> usize {
        self.pieces.iter().filter(|p| p.parity == parity).map(|p| p.labels.len()).sum()
    }

    /// Parity of every basis vector, in basis order.
    pub fn parities(&self) -> Vec<Parity> {
        self.pieces.iter().flat_map(|p| std::iter::repeat_n(p.parity, p.labels.len())).collect()
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.pieces.iter().flat_map(|p| &p.labels)
    }
}

/// An exact linear map between graded spaces (matrix acts on column vectors).
#[derive(Clone, Debug)]
pub struct LinearMapExact {
    pub domain: GradedVectorSpace,
    pub codomain: GradedVectorSpace,
    pub matrix: Matrix,
    pub parity: Parity,
}

impl LinearMapExact {
    pub fn new(domain: GradedVectorSpace, codomain: GradedVectorSpace, matrix: Matrix, parity: Parity) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::Shape(format!(
                "matrix is {}x{} but map is {} -> {}",
                matrix.rows(),
                matrix.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinearMapExact { domain, codomain, matrix, parity })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMapExact) -> Result<LinearMapExact> {
        if inner.codomain != self.domain {
            return Err(Error::Shape("composition of maps with mismatched spaces".into()));
        }
        LinearMapExact::new(
            inner.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&inner.matrix)?,
            self.parity + inner.parity,
        )
    }

    pub fn kernel_and_image(&self) -> KernelImage {
        kernel_and_image(&self.matrix)
    }

    /// Supertrace of an endomorphism: trace over even basis vectors minus
    /// trace over odd ones.
    pub fn supertrace(&self) -> Result<crate::scalar::Scalar> {
        if self.domain != self.codomain {
            return Err(Error::Shape("supertrace of a non-endomorphism".into()));
        }
        Ok(supertrace(&self.matrix, &self.domain.parities()))
    }
}

/// Supertrace of a square matrix whose basis has the given parities.
pub fn supertrace(m: &Matrix, parities: &[Parity]) -> crate::scalar::Scalar {
    let mut acc = crate::scalar::Scalar::zero();
    for (i, p) in parities.iter().enumerate() {
        match p {
            Parity::Even => acc += &m[(i, i)],
            Parity::Odd => acc -= &m[(i, i)],
        }
    }
    acc
}
