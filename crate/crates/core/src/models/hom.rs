//! Hom complexes `Hom(C, Π)` into an abelian target, and the outer action of
//! a derivation slice on them through the indecomposables.

use super::outer::OuterAction;
use crate::algebra::basis::GradedBasis;
use crate::algebra::linmap::GradedLinearMap;
use crate::algebra::matrix::{Matrix, Subspace};
use crate::algebra::rational::{odd, Rational};
use crate::derivations::DerSlice;
use crate::dgla::{DgLieAlgebra, SharedDgla};
use crate::error::DgError;
use crate::freelie::{Indecomposables, Presentation, Rho};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A chain complex `C` of finite dimension, with a degree -1 differential.
#[derive(Debug, Clone)]
pub struct Source {
    pub basis: GradedBasis,
    pub d: GradedLinearMap,
}

impl Source {
    /// `s·indec`: the indecomposables shifted up by one, with `d(sx) = -s(dx)`.
    pub fn suspended(ind: &Indecomposables) -> Source {
        let basis = GradedBasis::new(ind.basis().entries().iter().map(|(n, k)| (format!("s{n}"), k + 1))).expect("distinct names");
        let mut d = GradedLinearMap::zero(basis.clone(), basis.clone(), -1);
        let inner = ind.complex.differential();
        for k in ind.basis().degrees() {
            let m = inner.block(k);
            if m.rows() > 0 && m.cols() > 0 {
                d.set_block(k + 1, m.scale(&-Rational::from_integer(1.into())));
            }
        }
        Source { basis, d }
    }

    /// Conjugates a map of degree `n` on the indecomposables to `s·indec`:
    /// `θ(sx) = (-1)^n s(θx)`.
    pub fn suspend_map(&self, map: &GradedLinearMap) -> GradedLinearMap {
        let n = map.degree();
        let mut out = GradedLinearMap::zero(self.basis.clone(), self.basis.clone(), n);
        for k in map.source().degrees() {
            let m = map.block(k);
            if m.rows() > 0 && m.cols() > 0 {
                out.set_block(k + 1, if odd(n) { m.scale(&-Rational::from_integer(1.into())) } else { m });
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
struct HomSpace {
    raw_dim: usize,
    space: Subspace,
}

/// `Hom(C, Π)_n = ⊕_e Hom(Q e, Π_{|e|+n})` on a window, with
/// `(Df)(e) = -(-1)^n f(de)`, optionally truncated: zero in negative
/// degrees and the cycles in degree 0. The bracket is zero.
#[derive(Debug, Clone)]
pub struct HomComplex {
    source: Source,
    pi: GradedBasis,
    window: (i64, i64),
    truncated: bool,
    spaces: BTreeMap<i64, HomSpace>,
}

impl HomComplex {
    pub fn new(source: Source, pi: GradedBasis, lo: i64, hi: i64, truncated: bool) -> HomComplex {
        let mut h = HomComplex {
            source,
            pi,
            window: (lo, hi),
            truncated,
            spaces: BTreeMap::new(),
        };
        for n in lo..=hi {
            let raw_dim = h.layout(n).1;
            let space = if truncated && n < 0 {
                Subspace::zero(raw_dim)
            } else {
                Subspace::full(raw_dim)
            };
            h.spaces.insert(n, HomSpace { raw_dim, space });
        }
        if truncated && h.spaces.contains_key(&0) {
            let (_, below) = h.layout(-1);
            let s0 = &h.spaces[&0];
            let cols: Vec<Vec<Rational>> = (0..s0.raw_dim).map(|c| h.raw_differential(0, &crate::dgla::unit(s0.raw_dim, c))).collect();
            let m = Matrix::from_columns(below, &cols);
            let z = Subspace::kernel(&m);
            h.spaces.get_mut(&0).expect("present").space = z;
        }
        h
    }

    fn layout(&self, n: i64) -> (Vec<(usize, usize, usize)>, usize) {
        let mut out = Vec::new();
        let mut start = 0;
        for e in 0..self.source.basis.len() {
            let len = self.pi.dim(self.source.basis.degree(e) + n);
            out.push((e, start, len));
            start += len;
        }
        (out, start)
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn pi(&self) -> &GradedBasis {
        &self.pi
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn raw_dim(&self, n: i64) -> usize {
        self.layout(n).1
    }

    /// Raw coordinates of the element with slice coordinates `v`.
    pub fn raw(&self, n: i64, v: &[Rational]) -> Vec<Rational> {
        self.spaces[&n].space.vector(v)
    }

    /// Slice coordinates of raw coordinates, if they lie in the slice.
    pub fn from_raw(&self, n: i64, raw: &[Rational]) -> Option<Vec<Rational>> {
        self.spaces.get(&n)?.space.coords(raw)
    }

    /// `e ↦ f(T e)` for raw `f` of degree `n` and a map `T` of degree `t`
    /// on the source.
    pub fn precompose(&self, n: i64, f: &[Rational], t: &GradedLinearMap) -> Vec<Rational> {
        let deg = t.degree();
        let (src_layout, _) = self.layout(n);
        let (layout, dim) = self.layout(n + deg);
        let mut out = vec![Rational::zero(); dim];
        let basis = &self.source.basis;
        for &(e, start, len) in &layout {
            if len == 0 {
                continue;
            }
            let k = basis.degree(e);
            let image = t.apply(k, &crate::dgla::unit(basis.dim(k), basis.local_index(e)));
            let targets = basis.in_degree(k + deg);
            for (c, &e2) in image.iter().zip(&targets) {
                if c.is_zero() {
                    continue;
                }
                let (_, s2, l2) = src_layout[e2];
                debug_assert_eq!(l2, len);
                for r in 0..len {
                    out[start + r] += c * &f[s2 + r];
                }
            }
        }
        out
    }

    fn raw_differential(&self, n: i64, f: &[Rational]) -> Vec<Rational> {
        let v = self.precompose(n, f, &self.source.d);
        if odd(n) {
            v
        } else {
            v.into_iter().map(|x| -x).collect()
        }
    }

    /// Raw coordinates of `e ↦ values[e]`, a degree `n` map given by its
    /// values in Π.
    pub fn raw_from_values(&self, n: i64, values: &[Vec<Rational>]) -> Vec<Rational> {
        let raw: Vec<Rational> = values.iter().flatten().cloned().collect();
        assert_eq!(raw.len(), self.raw_dim(n), "values must match Π degreewise");
        raw
    }
}

impl DgLieAlgebra for HomComplex {
    fn window(&self) -> (i64, i64) {
        self.window
    }

    fn dim(&self, degree: i64) -> usize {
        self.spaces.get(&degree).map_or(0, |s| s.space.dim())
    }

    fn differential(&self, degree: i64, x: &[Rational]) -> Option<Vec<Rational>> {
        if !self.knows(degree - 1) {
            return None;
        }
        if self.truncated && degree <= 0 {
            return Some(vec![Rational::zero(); self.dim(degree - 1)]);
        }
        let raw = self.raw_differential(degree, &self.raw(degree, x));
        Some(self.from_raw(degree - 1, &raw).expect("the differential preserves the slice"))
    }

    fn bracket(&self, i: i64, _x: &[Rational], j: i64, _y: &[Rational]) -> Option<Vec<Rational>> {
        self.knows(i + j).then(|| vec![Rational::zero(); self.dim(i + j)])
    }

    fn basis_name(&self, degree: i64, i: usize) -> String {
        format!("hom{degree}.{i}")
    }
}

/// Derivations acting on `Hom(s·indec_B(L), Π)` by
/// `(f·θ)(sx) = (-1)^{|θ|} f(s θx)` and `θ·f = -(-1)^{|f||θ|} f·θ`, twisted by
/// `χ(θ) = ρ̃·θ` where `ρ̃(sx) = ρ(x)`.
pub struct HomAction {
    acting: SharedDgla,
    module: SharedDgla,
    der: Arc<DerSlice>,
    hom: Arc<HomComplex>,
    /// Per degree, the suspended indecomposables action of each basis derivation.
    maps: BTreeMap<i64, Vec<GradedLinearMap>>,
    rho_tilde: Vec<Rational>,
}

impl HomAction {
    pub fn new(der: Arc<DerSlice>, hom: Arc<HomComplex>, b: Option<&str>, rho: &Rho) -> Result<HomAction, DgError> {
        let p: &Arc<Presentation> = der.presentation();
        let ind = p.indecomposables(b)?;
        let (lo, hi) = der.window();
        let mut maps = BTreeMap::new();
        for n in lo..=hi {
            let list: Result<Vec<_>, DgError> = der
                .basis_derivations(n)
                .iter()
                .map(|t| Ok(hom.source().suspend_map(&t.indec_action(b)?)))
                .collect();
            maps.insert(n, list?);
        }
        let values: Vec<Vec<Rational>> = ind.generators.iter().map(|&g| rho.value(g).to_vec()).collect();
        for (v, &g) in values.iter().zip(&ind.generators) {
            if v.len() != hom.pi().dim(p.lie().gen_degree(g)) {
                return Err(DgError::DimensionMismatch("rho and the Hom complex use different Π".into()));
            }
        }
        let rho_tilde = hom.raw_from_values(-1, &values);
        Ok(HomAction {
            acting: der.clone(),
            module: hom.clone(),
            der,
            hom,
            maps,
            rho_tilde,
        })
    }

    pub fn der(&self) -> &Arc<DerSlice> {
        &self.der
    }

    pub fn hom(&self) -> &Arc<HomComplex> {
        &self.hom
    }

    /// The suspended action of the element with coordinates `theta`.
    fn map(&self, i: i64, theta: &[Rational]) -> Option<GradedLinearMap> {
        let maps = self.maps.get(&i)?;
        let src = &self.hom.source().basis;
        let mut out = GradedLinearMap::zero(src.clone(), src.clone(), i);
        for k in src.degrees() {
            let mut m = Matrix::zeros(src.dim(k + i), src.dim(k));
            for (c, t) in theta.iter().zip(maps) {
                if !c.is_zero() {
                    m = m.add(&t.block(k).scale(c));
                }
            }
            out.set_block(k, m);
        }
        Some(out)
    }

    /// `f·θ` in raw coordinates.
    fn raw_right(&self, j: i64, f: &[Rational], i: i64, theta: &[Rational]) -> Option<Vec<Rational>> {
        let t = self.map(i, theta)?;
        Some(self.hom.precompose(j, f, &t))
    }
}

impl OuterAction for HomAction {
    fn acting(&self) -> &SharedDgla {
        &self.acting
    }

    fn module(&self) -> &SharedDgla {
        &self.module
    }

    fn act(&self, i: i64, theta: &[Rational], j: i64, x: &[Rational]) -> Option<Vec<Rational>> {
        if !self.hom.knows(i + j) || !self.hom.knows(j) {
            return None;
        }
        let v = self.raw_right(j, &self.hom.raw(j, x), i, theta)?;
        let v = if odd(i * j) { v } else { v.into_iter().map(|x| -x).collect() };
        Some(self.hom.from_raw(i + j, &v).expect("the action preserves the truncation"))
    }

    fn chi(&self, i: i64, theta: &[Rational]) -> Option<Vec<Rational>> {
        if !self.hom.knows(i - 1) {
            return None;
        }
        let v = self.raw_right(-1, &self.rho_tilde, i, theta)?;
        Some(self.hom.from_raw(i - 1, &v).expect("chi lands in the truncation"))
    }
}
