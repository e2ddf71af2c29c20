//! Dense rational matrices and exact elimination.
//!
//! Rank profiles and kernels go through fraction-free (Bareiss) elimination on
//! row-scaled integer copies, choosing among the admissible pivots the one of
//! smallest bit length. Small square solves use rational Gauss-Jordan.

use super::rational::{bit_size, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(super::rational::format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Rational>>) -> Self {
        assert_eq!(entries.len(), rows, "row count mismatch");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "column count mismatch");
            data.extend(r);
        }
        Matrix { rows, cols, data }
    }

    /// Builds a `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Rational::from_integer(x.into())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Rational) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_columns(self.rows, &cols)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(self)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.echelon().kernel_basis()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let pivot = (c..n)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by_key(|&i| bit_size(a.get(i, c)))?;
            a.swap_rows(c, pivot);
            inv.swap_rows(c, pivot);
            let p = a.get(c, c).clone();
            let pinv = p.recip();
            for j in 0..n {
                let x = a.get(c, j) * &pinv;
                a.set(c, j, x);
                let y = inv.get(c, j) * &pinv;
                inv.set(c, j, y);
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, x);
                    let y = inv.get(i, j) - &f * inv.get(c, j);
                    inv.set(i, j, y);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Some solution `x` of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let ech = aug.echelon();
        if ech.pivot_cols.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols + 1];
        x[self.cols] = -Rational::one();
        ech.back_substitute(&mut x);
        x.truncate(self.cols);
        Some(x)
    }
}

/// Row echelon form of an integer-scaled copy of a rational matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub pivot_cols: Vec<usize>,
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

impl Echelon {
    pub fn new(m: &Matrix) -> Echelon {
        let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|i| integer_row(m.row(i))).collect();
        a.retain(|r| r.iter().any(|x| !x.is_zero()));
        let nrows = a.len();
        let mut pivot_cols = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == nrows {
                break;
            }
            let best = (r..nrows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].bits());
            let Some(best) = best else { continue };
            a.swap(r, best);
            let (head, tail) = a.split_at_mut(r + 1);
            let prow = &head[r];
            let p = &prow[c];
            for row in tail.iter_mut() {
                let f = row[c].clone();
                for j in c + 1..m.cols {
                    let v = p * &row[j] - &f * &prow[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
                row[c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivot_cols.push(c);
            r += 1;
        }
        a.truncate(r);
        for row in a.iter_mut() {
            reduce_row(row);
        }
        Echelon {
            pivot_cols,
            rows: a,
            cols: m.cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Fills the pivot entries of `x` so that the echelon rows vanish on it,
    /// given its free entries.
    fn back_substitute(&self, x: &mut [Rational]) {
        for (i, &c) in self.pivot_cols.iter().enumerate().rev() {
            let row = &self.rows[i];
            let mut s = Rational::zero();
            for j in c + 1..self.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += Rational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[c] = -s / Rational::from_integer(row[c].clone());
        }
    }

    /// Kernel basis: one vector per free column, equal to 1 there and 0 on
    /// the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.free_cols()
            .into_iter()
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                self.back_substitute(&mut x);
                x
            })
            .collect()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    row.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

fn reduce_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// A subspace of `Q^n` with a basis that restricts to the identity on a set
/// of pivot coordinates, so coordinates of a member are read off directly.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn full(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: (0..n)
                .map(|i| {
                    let mut v = vec![Rational::zero(); n];
                    v[i] = Rational::one();
                    v
                })
                .collect(),
            pivots: (0..n).collect(),
        }
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Kernel of `m` (acting on column vectors of length `m.cols()`).
    pub fn kernel(m: &Matrix) -> Subspace {
        let ech = m.echelon();
        Subspace {
            ambient: m.cols(),
            pivots: ech.free_cols(),
            basis: ech.kernel_basis(),
        }
    }

    /// Span of the given vectors, via reduced row echelon form.
    pub fn span(n: usize, vectors: &[Vec<Rational>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(n);
        }
        let m = Matrix::from_rows(vectors.len(), n, vectors.to_vec());
        let ech = m.echelon();
        let rank = ech.rank();
        let mut pivots = Vec::with_capacity(rank);
        let mut basis = Vec::with_capacity(rank);
        // Reduce each echelon row against the later ones to reach RREF.
        let mut rows: Vec<Vec<Rational>> = ech
            .rows
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        for i in (0..rank).rev() {
            let c = ech.pivot_cols[i];
            let p = rows[i][c].clone();
            for x in rows[i].iter_mut() {
                *x /= &p;
            }
            for k in 0..i {
                let f = rows[k][c].clone();
                if f.is_zero() {
                    continue;
                }
                let (lo, hi) = rows.split_at_mut(i);
                for (x, y) in lo[k].iter_mut().zip(hi[0].iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        for (i, r) in rows.into_iter().enumerate() {
            pivots.push(ech.pivot_cols[i]);
            basis.push(r);
        }
        Subspace {
            ambient: n,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn vector(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![Rational::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        v
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not a member.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.vector(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    /// Basis matrix, one column per basis vector.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// Intersection with the kernel of `m`.
    pub fn intersect_kernel(&self, m: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return self.clone();
        }
        let restricted = m.mul(&self.matrix());
        let k = Subspace::kernel(&restricted);
        let vectors: Vec<Vec<Rational>> = k.basis.iter().map(|c| self.vector(c)).collect();
        Subspace::span(self.ambient, &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qf};

    #[test]
    fn rank_and_kernel_of_rank_one() {
        let m = Matrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]), vec![q(0), q(0)]);
        // kernel spanned by (2, -1) up to scale
        assert_eq!(&k[0][0] * q(-1), &k[0][1] * q(2));
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert!(Matrix::identity(3).kernel().is_empty());
        assert_eq!(Matrix::zeros(2, 2).rank(), 0);
        assert_eq!(Matrix::zeros(2, 2).kernel().len(), 2);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_rows(2, 2, vec![vec![q(2), q(1)], vec![q(1), qf(1, 2)]]);
        assert!(m.inverse().is_none());
        let m = Matrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 0, 0, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        let b = vec![q(1), q(2), q(3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let sing = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(sing.solve(&[q(1), q(0)]).is_none());
    }

    #[test]
    fn bareiss_with_skipped_columns() {
        let m = Matrix::from_i64(3, 4, &[0, 2, 4, 1, 0, 1, 2, 3, 0, 3, 6, 4]);
        assert_eq!(m.rank(), 2);
        for v in m.kernel() {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn subspace_coords() {
        let s = Subspace::span(3, &[vec![q(1), q(1), q(0)], vec![q(2), q(2), q(0)], vec![q(0), q(1), q(1)]]);
        assert_eq!(s.dim(), 2);
        let v = vec![q(3), q(5), q(2)];
        let c = s.coords(&v).unwrap();
        assert_eq!(s.vector(&c), v);
        assert!(s.coords(&[q(1), q(0), q(0)]).is_none());
    }
}
