use crate::error::{Error, Result};
use crate::graded::Parity;
use crate::poly::{Polynomial, Ring};

/// A Landau-Ginzburg pair `(ℂ^d, W)` with polynomial superpotential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LgPair {
    ring: Ring,
    w: Polynomial,
    weights: Option<Vec<u32>>,
}

/// Weights making `W` quasi-homogeneous, with its weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHomogeneity {
    pub weights: Vec<u32>,
    pub degree: u64,
}

impl LgPair {
    pub fn new(ring: Ring, w: Polynomial, weights: Option<Vec<u32>>) -> Result<Self> {
        let d = ring.nvars();
        if d == 0 {
            return Err(Error::InvalidLgPair("dimension must be positive".into()));
        }
        if ring.vars().iter().any(|v| v == "i") {
            return Err(Error::InvalidLgPair("`i` is reserved for the imaginary unit".into()));
        }
        if w.nvars() != d {
            return Err(Error::RingMismatch(d, w.nvars()));
        }
        if w.is_constant() {
            return Err(Error::InvalidLgPair("W must be non-constant".into()));
        }
        if let Some(ws) = &weights {
            if ws.len() != d {
                return Err(Error::InvalidLgPair(format!("{} weights given for {d} variables", ws.len())));
            }
            if ws.contains(&0) {
                return Err(Error::InvalidLgPair("weights must be positive".into()));
            }
            if w.homogeneous_degree(ws).is_none() {
                return Err(Error::InvalidLgPair("W is not quasi-homogeneous for the given weights".into()));
            }
        }
        Ok(LgPair { ring, w, weights })
    }

    /// Parse `W` over the named variables.
    pub fn parse<S: AsRef<str>>(vars: &[S], w: &str, weights: Option<Vec<u32>>) -> Result<Self> {
        let ring = Ring::new(vars.iter().map(|s| s.as_ref().to_string()));
        let poly = ring.parse(w)?;
        LgPair::new(ring, poly, weights)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.ring.nvars()
    }

    pub fn superpotential(&self) -> &Polynomial {
        &self.w
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    /// `d mod 2`.
    pub fn signature(&self) -> Parity {
        Parity::of(self.dimension() as i64)
    }

    /// The grading used for exact degreewise computations: the declared
    /// weights, or unit weights when `W` is homogeneous in the usual sense.
    pub fn quasi_homogeneity(&self) -> Option<QuasiHomogeneity> {
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; self.dimension()]);
        let degree = self.w.homogeneous_degree(&weights)?;
        Some(QuasiHomogeneity { weights, degree })
    }

    pub fn partials(&self) -> Vec<Polynomial> {
        (0..self.dimension()).map(|k| self.w.partial_derivative(k).expect("index in range")).collect()
    }

    /// `det(∂_i ∂_j W)`.
    pub fn hessian(&self) -> Polynomial {
        let d = self.dimension();
        let first = self.partials();
        let mut h = Vec::with_capacity(d * d);
        for p in &first {
            for j in 0..d {
                h.push(p.partial_derivative(j).unwrap());
            }
        }
        determinant(d, &h, self.dimension())
    }

    pub fn display(&self, p: &Polynomial) -> String {
        self.ring.display(p).to_string()
    }
}

/// Determinant of a row-major `n x n` polynomial matrix by Laplace expansion.
pub fn determinant(n: usize, entries: &[Polynomial], nvars: usize) -> Polynomial {
    assert_eq!(entries.len(), n * n);
    if n == 0 {
        return Polynomial::one(nvars);
    }
    if n == 1 {
        return entries[0].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    for col in 0..n {
        if entries[col].is_zero() {
            continue;
        }
        let minor: Vec<Polynomial> = (1..n)
            .flat_map(|r| (0..n).filter(move |&c| c != col).map(move |c| (r, c)))
            .map(|(r, c)| entries[r * n + c].clone())
            .collect();
        let term = &entries[col] * &determinant(n - 1, &minor, nvars);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(LgPair::parse(&["x"], "3", None).is_err());
        assert!(LgPair::parse(&["x", "y"], "x^3 + y^2", Some(vec![1, 1])).is_err());
        assert!(LgPair::parse(&["x", "y"], "x^3 + y^2", Some(vec![2, 3])).is_ok());
        assert!(LgPair::parse(&["i"], "i^2", None).is_err());
    }

    #[test]
    fn signature_and_grading() {
        let lg = LgPair::parse(&["x", "y", "z"], "x^2+y^2+z^2", None).unwrap();
        assert_eq!(lg.signature(), Parity::Odd);
        let qh = lg.quasi_homogeneity().unwrap();
        assert_eq!((qh.weights, qh.degree), (vec![1, 1, 1], 2));
        let lg2 = LgPair::parse(&["x"], "x^3 - 3*x", None).unwrap();
        assert!(lg2.quasi_homogeneity().is_none());
    }

    #[test]
    fn hessian_of_cubic() {
        let lg = LgPair::parse(&["x", "y"], "x^3 + y^3", None).unwrap();
        assert_eq!(lg.hessian(), lg.ring().parse("36*x*y").unwrap());
    }
}
