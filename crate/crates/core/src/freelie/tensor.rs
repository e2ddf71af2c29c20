//! The tensor algebra T(V) on a set of graded generators.
//!
//! Words are sequences of generator positions; the free graded Lie algebra
//! sits inside T(V) through `[x, y] = xy - (-1)^{|x||y|} yx`.

use crate::algebra::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

pub type Word = Vec<u16>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Word, Rational>,
}

impl Tensor {
    pub fn zero() -> Tensor {
        Tensor::default()
    }

    pub fn word(w: Word) -> Tensor {
        Self::monomial(w, num_traits::One::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Tensor {
        let mut t = Tensor::zero();
        t.add_term(w, c);
        t
    }

    /// The empty word, the unit of T(V).
    pub fn unit() -> Tensor {
        Tensor::word(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u16]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Tensor {
        let mut t = Tensor::zero();
        t.add_scaled(self, c);
        t
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// Graded commutator of homogeneous tensors of degrees `da`, `db`.
    pub fn commutator(&self, da: i64, other: &Tensor, db: i64) -> Tensor {
        let mut out = self.mul(other);
        let s = if (da * db).rem_euclid(2) == 0 {
            -Rational::from_integer(1.into())
        } else {
            Rational::from_integer(1.into())
        };
        out.add_scaled(&other.mul(self), &s);
        out
    }

    pub fn into_terms(self) -> BTreeMap<Word, Rational> {
        self.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    #[test]
    fn commutator_signs() {
        let x = Tensor::word(vec![0]);
        let y = Tensor::word(vec![1]);
        let even = x.commutator(2, &y, 2);
        assert_eq!(even.coeff(&[0, 1]), q(1));
        assert_eq!(even.coeff(&[1, 0]), q(-1));
        let odd = x.commutator(1, &x, 1);
        assert_eq!(odd.coeff(&[0, 0]), q(2));
        assert!(x.commutator(2, &x, 2).is_zero());
    }
}
