//! Graded linear maps stored as one dense block per source degree.

use super::basis::GradedBasis;
use super::matrix::Matrix;
use super::rational::Rational;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLinearMap {
    source: GradedBasis,
    target: GradedBasis,
    degree: i64,
    blocks: BTreeMap<i64, Matrix>,
}

/// Output of [`GradedLinearMap::rank_profile`].
#[derive(Debug, Clone)]
pub struct RankProfile {
    pub rank: usize,
    /// Coordinate vectors in the source degree.
    pub kernel: Vec<Vec<Rational>>,
    /// Coordinate vectors in the target degree.
    pub image: Vec<Vec<Rational>>,
}

impl GradedLinearMap {
    pub fn zero(source: GradedBasis, target: GradedBasis, degree: i64) -> Self {
        GradedLinearMap {
            source,
            target,
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &GradedBasis {
        &self.source
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Sets the block on source degree `k`; panics on a dimension mismatch.
    pub fn set_block(&mut self, k: i64, m: Matrix) {
        assert_eq!(m.cols(), self.source.dim(k), "block columns must match source degree {k}");
        assert_eq!(
            m.rows(),
            self.target.dim(k + self.degree),
            "block rows must match target degree {}",
            k + self.degree
        );
        if m.is_zero() {
            self.blocks.remove(&k);
        } else {
            self.blocks.insert(k, m);
        }
    }

    /// The block on source degree `k`; absent blocks are zero.
    pub fn block(&self, k: i64) -> Matrix {
        self.blocks
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(k + self.degree), self.source.dim(k)))
    }

    pub fn apply(&self, k: i64, v: &[Rational]) -> Vec<Rational> {
        match self.blocks.get(&k) {
            Some(m) => m.mul_vec(v),
            None => vec![num_traits::Zero::zero(); self.target.dim(k + self.degree)],
        }
    }

    /// Composite `self ∘ other`.
    pub fn compose(&self, other: &GradedLinearMap) -> GradedLinearMap {
        assert_eq!(other.target, self.source, "composition basis mismatch");
        let mut out = GradedLinearMap::zero(other.source.clone(), self.target.clone(), self.degree + other.degree);
        for k in other.source.degrees() {
            let m = self.block(k + other.degree).mul(&other.block(k));
            out.set_block(k, m);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn rank_profile(&self, k: i64) -> RankProfile {
        let m = self.block(k);
        let ech = m.echelon();
        RankProfile {
            rank: ech.rank(),
            kernel: ech.kernel_basis(),
            image: ech.pivot_cols.iter().map(|&c| m.column(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    #[test]
    fn profiles() {
        let b = GradedBasis::new([("x", 0), ("y", 0)]).unwrap();
        let z = GradedLinearMap::zero(b.clone(), b.clone(), 0);
        let p = z.rank_profile(0);
        assert_eq!((p.rank, p.kernel.len()), (0, 2));
        let mut m = GradedLinearMap::zero(b.clone(), b, 0);
        m.set_block(0, Matrix::from_i64(2, 2, &[1, 2, 2, 4]));
        let p = m.rank_profile(0);
        assert_eq!(p.rank, 1);
        assert_eq!(p.image, vec![vec![q(1), q(2)]]);
        assert_eq!(p.kernel, vec![vec![q(-2), q(1)]]);
    }
}
