//! Chain complexes over a finite degree window, and their homology.

use super::basis::GradedBasis;
use super::linmap::GradedLinearMap;
use super::matrix::Matrix;
use super::rational::Rational;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("degree {degree} needs differentials from window ({min}, {max}), which lacks degree {missing}")]
    WindowTooNarrow {
        degree: i64,
        missing: i64,
        min: i64,
        max: i64,
    },
    #[error("d∘d is nonzero from degree {degree}")]
    NotAComplex { degree: i64 },
}

/// Degrees `min..=max` of a chain complex with differential of degree -1.
///
/// Nothing is known about degrees outside the window; in particular the
/// differential leaving degree `min` is not recorded.
#[derive(Debug, Clone)]
pub struct ChainComplexSlice {
    min: i64,
    max: i64,
    differential: GradedLinearMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: usize,
    #[serde(serialize_with = "ser_vectors")]
    pub representatives: Vec<Vec<Rational>>,
}

fn ser_vectors<S: serde::Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&super::rational::to_strings(x))?;
    }
    seq.end()
}

impl ChainComplexSlice {
    /// `blocks[k]` is the matrix of `d_k: C_k -> C_{k-1}` for `k` in
    /// `min+1..=max`; missing blocks are zero.
    pub fn new(min: i64, max: i64, basis: GradedBasis, blocks: impl IntoIterator<Item = (i64, Matrix)>) -> Self {
        assert!(min <= max, "empty window");
        for (n, d) in basis.entries() {
            assert!(*d >= min && *d <= max, "basis element {n} of degree {d} outside window");
        }
        let mut differential = GradedLinearMap::zero(basis.clone(), basis, -1);
        for (k, m) in blocks {
            assert!(k > min && k <= max, "differential block at degree {k} outside window");
            differential.set_block(k, m);
        }
        ChainComplexSlice { min, max, differential }
    }

    /// A complex with anonymous basis names `prefix{k}.{i}`.
    pub fn from_dims(min: i64, max: i64, prefix: &str, dims: &[(i64, usize)], blocks: impl IntoIterator<Item = (i64, Matrix)>) -> Self {
        let mut basis = GradedBasis::default();
        for &(k, n) in dims {
            for i in 0..n {
                basis.push(format!("{prefix}{k}.{i}"), k).expect("generated names are unique");
            }
        }
        Self::new(min, max, basis, blocks)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.min, self.max)
    }

    pub fn basis(&self) -> &GradedBasis {
        self.differential.source()
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis().dim(k)
    }

    pub fn differential(&self) -> &GradedLinearMap {
        &self.differential
    }

    /// Matrix of `d_k`, if degree `k-1` lies in the window.
    pub fn d(&self, k: i64) -> Option<Matrix> {
        if k > self.min && k <= self.max {
            Some(self.differential.block(k))
        } else {
            None
        }
    }

    /// Checks `d_{k-1} d_k = 0` everywhere both lie in the window.
    pub fn check_d_squared(&self) -> Result<(), ComplexError> {
        for k in self.min + 2..=self.max {
            let a = self.differential.block(k - 1);
            let b = self.differential.block(k);
            if !a.mul(&b).is_zero() {
                return Err(ComplexError::NotAComplex { degree: k });
            }
        }
        Ok(())
    }

    pub fn homology(&self, lo: i64, hi: i64) -> Result<Vec<HomologyGroup>, ComplexError> {
        let mut out = Vec::new();
        for k in lo..=hi {
            out.push(self.homology_at(k)?);
        }
        Ok(out)
    }

    pub fn betti(&self, lo: i64, hi: i64) -> Result<Vec<usize>, ComplexError> {
        Ok(self.homology(lo, hi)?.into_iter().map(|h| h.betti).collect())
    }

    pub fn homology_at(&self, k: i64) -> Result<HomologyGroup, ComplexError> {
        let narrow = |missing| ComplexError::WindowTooNarrow {
            degree: k,
            missing,
            min: self.min,
            max: self.max,
        };
        if k - 1 < self.min {
            return Err(narrow(k - 1));
        }
        if k + 1 > self.max {
            return Err(narrow(k + 1));
        }
        let dk = self.differential.block(k);
        let dk1 = self.differential.block(k + 1);
        if !dk.mul(&dk1).is_zero() {
            return Err(ComplexError::NotAComplex { degree: k + 1 });
        }
        let n = self.dim(k);
        let kernel = dk.kernel();
        let boundaries = self.differential.rank_profile(k + 1).image;
        let mut cols = boundaries.clone();
        cols.extend(kernel.iter().cloned());
        let ech = Matrix::from_columns(n, &cols).echelon();
        let representatives: Vec<Vec<Rational>> = ech
            .pivot_cols
            .iter()
            .filter(|&&c| c >= boundaries.len())
            .map(|&c| cols[c].clone())
            .collect();
        Ok(HomologyGroup {
            degree: k,
            betti: representatives.len(),
            representatives,
        })
    }
}

/// Rank of the map induced on `H_k` by a chain map whose degree-`k`
/// block is `map_k`.
pub fn induced_rank(source: &ChainComplexSlice, target: &ChainComplexSlice, map_k: &Matrix, k: i64) -> Result<usize, ComplexError> {
    let reps = source.homology_at(k)?.representatives;
    target.homology_at(k)?;
    let boundaries = target.differential.rank_profile(k + 1).image;
    let mut cols = boundaries.clone();
    cols.extend(reps.iter().map(|r| map_k.mul_vec(r)));
    let n = target.dim(k);
    if n == 0 {
        return Ok(0);
    }
    Ok(Matrix::from_columns(n, &cols).rank() - boundaries.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acyclic_identity() {
        let c = ChainComplexSlice::from_dims(0, 3, "c", &[(1, 1), (2, 1)], [(2, Matrix::identity(1))]);
        assert_eq!(c.betti(1, 2).unwrap(), vec![0, 0]);
        assert!(matches!(c.homology(0, 2), Err(ComplexError::WindowTooNarrow { .. })));
        assert!(matches!(c.homology(1, 3), Err(ComplexError::WindowTooNarrow { .. })));
    }

    #[test]
    fn not_a_complex() {
        let c = ChainComplexSlice::from_dims(
            0,
            3,
            "c",
            &[(0, 1), (1, 1), (2, 1)],
            [(1, Matrix::identity(1)), (2, Matrix::identity(1))],
        );
        assert!(matches!(c.homology_at(1), Err(ComplexError::NotAComplex { .. })));
        assert!(c.check_d_squared().is_err());
    }

    #[test]
    fn representatives_are_cycles() {
        // d_2: Q^2 -> Q^1, (x, y) -> x + y
        let c = ChainComplexSlice::from_dims(1, 3, "c", &[(1, 1), (2, 2)], [(2, Matrix::from_i64(1, 2, &[1, 1]))]);
        let h = c.homology_at(2).unwrap();
        assert_eq!(h.betti, 1);
        let d = c.d(2).unwrap();
        assert!(d.mul_vec(&h.representatives[0]).iter().all(num_traits::Zero::is_zero));
    }
}
