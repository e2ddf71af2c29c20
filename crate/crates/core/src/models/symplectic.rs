//! Graded symplectic vector spaces and their cycle ω.

use crate::algebra::basis::GradedBasis;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{format_rational, odd, Rational};
use crate::error::DgError;
use crate::freelie::{FreeLie, LieElement};
use num_traits::{One, Zero};

/// A graded vector space with a unimodular pairing of degree `-m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    basis: GradedBasis,
    m: i64,
    pairing: Matrix,
    inverse: Matrix,
}

impl SymplecticSpace {
    /// Checks degrees, graded antisymmetry `<v,w> = (-1)^{|v||w|+1} <w,v>`
    /// and invertibility.
    pub fn new(basis: GradedBasis, m: i64, pairing: Matrix) -> Result<SymplecticSpace, DgError> {
        let n = basis.len();
        if pairing.rows() != n || pairing.cols() != n {
            return Err(DgError::DimensionMismatch(format!(
                "pairing is {}x{} for {n} generators",
                pairing.rows(),
                pairing.cols()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let (di, dj) = (basis.degree(i), basis.degree(j));
                let x = pairing.get(i, j);
                if !x.is_zero() && di + dj != m {
                    return Err(DgError::NotUnimodular(format!(
                        "<{}, {}> = {} but the degrees add to {} instead of {m}",
                        basis.name(i),
                        basis.name(j),
                        format_rational(x),
                        di + dj
                    )));
                }
                let mirror = if odd(di * dj + 1) { -pairing.get(j, i) } else { pairing.get(j, i).clone() };
                if *x != mirror {
                    return Err(DgError::NotUnimodular(format!(
                        "<{}, {}> and <{}, {}> violate graded antisymmetry",
                        basis.name(i),
                        basis.name(j),
                        basis.name(j),
                        basis.name(i)
                    )));
                }
            }
        }
        let inverse = pairing
            .inverse()
            .ok_or_else(|| DgError::NotUnimodular("the pairing matrix is singular".into()))?;
        Ok(SymplecticSpace {
            basis,
            m,
            pairing,
            inverse,
        })
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn pairing(&self) -> &Matrix {
        &self.pairing
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `ω = ½ Σ_i [α_i^#, α_i]` where `<α_i^#, α_j> = δ_ij`. The basis of
    /// the space is generators `offset..offset+dim` of `lie`.
    pub fn omega(&self, lie: &FreeLie, offset: usize) -> LieElement {
        let half = Rational::one() / Rational::from_integer(2.into());
        let mut out = LieElement::zero(self.m);
        for i in 0..self.dim() {
            for k in 0..self.dim() {
                let c = self.inverse.get(i, k);
                if c.is_zero() {
                    continue;
                }
                let b = lie.bracket(&lie.generator(offset + k), &lie.generator(offset + i));
                out.add_scaled(&b, &(c * &half));
            }
        }
        out
    }

    /// Orthogonal direct sum; names of the second summand may be renamed.
    pub fn direct_sum(&self, other: &SymplecticSpace, names: &[String]) -> Result<SymplecticSpace, DgError> {
        if self.m != other.m {
            return Err(DgError::DimensionMismatch(format!("form degrees {} and {}", self.m, other.m)));
        }
        let mut basis = self.basis.clone();
        for (i, name) in names.iter().enumerate() {
            basis.push(name.clone(), other.basis.degree(i))?;
        }
        let (a, b) = (self.dim(), other.dim());
        let mut p = Matrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                p.set(i, j, self.pairing.get(i, j).clone());
            }
        }
        for i in 0..b {
            for j in 0..b {
                p.set(a + i, a + j, other.pairing.get(i, j).clone());
            }
        }
        SymplecticSpace::new(basis, self.m, p)
    }

    /// Whether `g` (a matrix on the basis) preserves the pairing: `gᵀ P g = P`.
    pub fn preserved_by(&self, g: &Matrix) -> bool {
        g.transpose().mul(&self.pairing).mul(g) == self.pairing
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qf;

    #[test]
    fn omega_of_small_spaces() {
        let basis = GradedBasis::new([("a", 2), ("b", 2)]).unwrap();
        let v = SymplecticSpace::new(basis, 4, Matrix::from_i64(2, 2, &[0, 1, -1, 0])).unwrap();
        let lie = FreeLie::new(&[("a", 2), ("b", 2)]).unwrap();
        assert_eq!(lie.format(&v.omega(&lie, 0)), "[a,b]");

        let basis = GradedBasis::new([("x", 1)]).unwrap();
        let v = SymplecticSpace::new(basis, 2, Matrix::from_i64(1, 1, &[1])).unwrap();
        let lie = FreeLie::new(&[("x", 1)]).unwrap();
        let w = v.omega(&lie, 0);
        let xx = lie.bracket(&lie.generator(0), &lie.generator(0));
        assert_eq!(w, xx.scale(&qf(1, 2)));
    }

    #[test]
    fn swapped_basis_gives_the_same_omega() {
        let lie = FreeLie::new(&[("a", 2), ("b", 2)]).unwrap();
        let v = SymplecticSpace::new(GradedBasis::new([("a", 2), ("b", 2)]).unwrap(), 4, Matrix::from_i64(2, 2, &[0, 1, -1, 0])).unwrap();
        // the same form written in the basis (b, a), read back on lie's letters
        let swapped = FreeLie::new(&[("b", 2), ("a", 2)]).unwrap();
        let w = SymplecticSpace::new(GradedBasis::new([("b", 2), ("a", 2)]).unwrap(), 4, Matrix::from_i64(2, 2, &[0, -1, 1, 0])).unwrap();
        let text = swapped.format(&w.omega(&swapped, 0));
        assert_eq!(lie.parse(&text).unwrap(), v.omega(&lie, 0));
    }

    #[test]
    fn rejects_bad_forms() {
        let basis = GradedBasis::new([("a", 2), ("b", 2)]).unwrap();
        assert!(matches!(
            SymplecticSpace::new(basis.clone(), 4, Matrix::from_i64(2, 2, &[0, 1, 1, 0])),
            Err(DgError::NotUnimodular(_))
        ));
        assert!(SymplecticSpace::new(basis, 4, Matrix::zeros(2, 2)).is_err());
    }
}
