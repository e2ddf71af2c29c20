//! Graded vector spaces with named bases.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
}

/// An ordered list of named, graded basis vectors.
#[derive(Debug, Clone, Default)]
pub struct GradedBasis {
    entries: Vec<(String, i64)>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for GradedBasis {}

impl GradedBasis {
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, i64)>) -> Result<Self, BasisError> {
        let mut b = GradedBasis::default();
        for (name, degree) in entries {
            b.push(name.into(), degree)?;
        }
        Ok(b)
    }

    pub fn push(&mut self, name: String, degree: i64) -> Result<usize, BasisError> {
        if self.index.contains_key(&name) {
            return Err(BasisError::DuplicateName(name));
        }
        let i = self.entries.len();
        self.index.insert(name.clone(), i);
        self.entries.push((name, degree));
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, i64)] {
        &self.entries
    }

    pub fn name(&self, i: usize) -> &str {
        &self.entries[i].0
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.entries[i].1
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Positions of the entries of the given degree, in basis order.
    pub fn in_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i].1 == degree).collect()
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.entries.iter().filter(|e| e.1 == degree).count()
    }

    /// Position of entry `i` within its own degree.
    pub fn local_index(&self, i: usize) -> usize {
        let d = self.entries[i].1;
        self.entries[..i].iter().filter(|e| e.1 == d).count()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.entries.iter().map(|e| e.1).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.iter().map(|e| e.1).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.entries.iter().map(|e| e.1).min()
    }

    /// The same entries with every degree shifted by `k`.
    pub fn shifted(&self, k: i64) -> GradedBasis {
        GradedBasis::new(self.entries.iter().map(|(n, d)| (n.clone(), d + k)))
            .expect("names stay unique")
    }

    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> GradedBasis {
        GradedBasis::new((0..self.len()).filter(|&i| keep(i)).map(|i| self.entries[i].clone()))
            .expect("names stay unique")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_degree() {
        let b = GradedBasis::new([("a", 2), ("x", 3), ("b", 2)]).unwrap();
        assert_eq!(b.in_degree(2), vec![0, 2]);
        assert_eq!(b.local_index(2), 1);
        assert_eq!(b.position("x"), Some(1));
        assert!(GradedBasis::new([("a", 1), ("a", 2)]).is_err());
    }
}
