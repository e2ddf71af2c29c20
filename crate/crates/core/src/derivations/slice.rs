//! Finite slices of derivation complexes in coordinates.
//!
//! A derivation of degree `n` is recorded by its values on the generators
//! that carry values (all generators, minus those of a generator-split rel
//! sub). These values, concatenated in basis coordinates, form the "hom
//! coordinates" of degree `n`; each degree of the slice is a subspace of them.

use super::Derivation;
use crate::algebra::basis::GradedBasis;
use crate::algebra::complex::{ChainComplexSlice, ComplexError, HomologyGroup};
use crate::algebra::matrix::{Matrix, Subspace};
use crate::algebra::rational::Rational;
use crate::dgla::DgLieAlgebra;
use crate::error::DgError;
use crate::freelie::{LieElement, Presentation, Rho, SubSpec};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct DerSpace {
    pub degree: i64,
    /// `(generator, start, len)` blocks of the hom coordinates.
    pub layout: Vec<(usize, usize, usize)>,
    pub hom_dim: usize,
    pub space: Subspace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeruMode {
    /// The caller asserts that the action on indecomposables is semisimple.
    SemisimpleAsserted,
    /// Requires d = 0; degree 0 is then all derivations with vanishing
    /// linear part on indecomposables.
    TrivialDifferential,
}

#[derive(Debug, Clone)]
pub struct DerSlice {
    p: Arc<Presentation>,
    rel: Option<String>,
    free: Vec<usize>,
    spaces: BTreeMap<i64, DerSpace>,
    complex: ChainComplexSlice,
}

fn layout(p: &Presentation, free: &[usize], n: i64) -> (Vec<(usize, usize, usize)>, usize) {
    let mut out = Vec::new();
    let mut start = 0;
    for &g in free {
        let len = p.lie().dim(p.lie().gen_degree(g) + n);
        out.push((g, start, len));
        start += len;
    }
    (out, start)
}

fn hom_to_derivation(p: &Arc<Presentation>, layout: &[(usize, usize, usize)], n: i64, v: &[Rational]) -> Derivation {
    let lie = p.lie();
    let mut values: Vec<LieElement> = (0..p.ngens()).map(|i| LieElement::zero(lie.gen_degree(i) + n)).collect();
    for &(g, start, len) in layout {
        if len > 0 {
            values[g] = lie.from_coords(lie.gen_degree(g) + n, &v[start..start + len]);
        }
    }
    Derivation::new(p.clone(), n, values).expect("values of the right degrees")
}

fn derivation_to_hom(free: &[usize], layout: &[(usize, usize, usize)], hom_dim: usize, theta: &Derivation) -> Option<Vec<Rational>> {
    let lie = theta.presentation().lie();
    for g in 0..lie.ngens() {
        if !free.contains(&g) && !theta.value(g).is_zero() {
            return None;
        }
    }
    let mut v = vec![Rational::zero(); hom_dim];
    for &(g, start, len) in layout {
        if len > 0 {
            let c = lie.coords(theta.value(g));
            v[start..start + len].clone_from_slice(&c);
        }
    }
    Some(v)
}

fn free_generators(p: &Presentation, rel: Option<&str>) -> Result<(Vec<usize>, Vec<LieElement>), DgError> {
    let all: Vec<usize> = (0..p.ngens()).collect();
    match rel {
        None => Ok((all, Vec::new())),
        Some(name) => match p.sub(name)? {
            SubSpec::GeneratorSplit(ix) => Ok((all.into_iter().filter(|i| !ix.contains(i)).collect(), Vec::new())),
            SubSpec::ElementGenerated(els) => Ok((all, els.clone())),
        },
    }
}

/// All derivations of degree `n` vanishing on the rel sub.
fn der_space(p: &Arc<Presentation>, free: &[usize], constraints: &[LieElement], n: i64) -> DerSpace {
    let (layout, hom_dim) = layout(p, free, n);
    let space = if constraints.is_empty() || hom_dim == 0 {
        Subspace::full(hom_dim)
    } else {
        let lie = p.lie();
        let rows: usize = constraints.iter().map(|e| lie.dim(e.degree() + n)).sum();
        let mut m = Matrix::zeros(rows, hom_dim);
        for c in 0..hom_dim {
            let theta = hom_to_derivation(p, &layout, n, &crate::dgla::unit(hom_dim, c));
            let mut r0 = 0;
            for e in constraints {
                let v = theta.eval(e);
                let k = lie.dim(e.degree() + n);
                if !v.is_zero() {
                    for (r, x) in lie.coords(&v).into_iter().enumerate() {
                        m.set(r0 + r, c, x);
                    }
                }
                r0 += k;
            }
        }
        Subspace::kernel(&m)
    };
    DerSpace {
        degree: n,
        layout,
        hom_dim,
        space,
    }
}

impl DerSlice {
    fn assemble(
        p: Arc<Presentation>,
        rel: Option<&str>,
        free: Vec<usize>,
        min: i64,
        max: i64,
        spaces: BTreeMap<i64, DerSpace>,
    ) -> Result<DerSlice, DgError> {
        let mut basis = GradedBasis::default();
        for (n, s) in &spaces {
            for i in 0..s.space.dim() {
                basis.push(format!("der{n}.{i}"), *n)?;
            }
        }
        let mut blocks = Vec::new();
        for n in (min + 1)..=max {
            let (src, tgt) = (&spaces[&n], &spaces[&(n - 1)]);
            if src.space.dim() == 0 || tgt.space.dim() == 0 {
                if src.space.dim() > 0 {
                    // the image must still vanish
                    for b in src.space.basis() {
                        let theta = hom_to_derivation(&p, &src.layout, n, b).d_commutator();
                        if !theta.is_zero() {
                            return Err(DgError::Invalid(format!("the differential leaves degree {} of the slice", n - 1)));
                        }
                    }
                }
                continue;
            }
            let mut cols = Vec::with_capacity(src.space.dim());
            for b in src.space.basis() {
                let dtheta = hom_to_derivation(&p, &src.layout, n, b).d_commutator();
                let v = derivation_to_hom(&free, &tgt.layout, tgt.hom_dim, &dtheta)
                    .and_then(|h| tgt.space.coords(&h))
                    .ok_or_else(|| DgError::Invalid(format!("the differential leaves degree {} of the slice", n - 1)))?;
                cols.push(v);
            }
            blocks.push((n, Matrix::from_columns(tgt.space.dim(), &cols)));
        }
        let complex = ChainComplexSlice::new(min, max, basis, blocks);
        Ok(DerSlice {
            p,
            rel: rel.map(str::to_string),
            free,
            spaces,
            complex,
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.p
    }

    pub fn rel(&self) -> Option<&str> {
        self.rel.as_deref()
    }

    pub fn complex(&self) -> &ChainComplexSlice {
        &self.complex
    }

    pub fn space(&self, n: i64) -> Option<&DerSpace> {
        self.spaces.get(&n)
    }

    pub fn homology(&self, lo: i64, hi: i64) -> Result<Vec<HomologyGroup>, ComplexError> {
        self.complex.homology(lo, hi)
    }

    /// The derivation with the given coordinates in degree `n`.
    pub fn derivation(&self, n: i64, coords: &[Rational]) -> Derivation {
        let s = &self.spaces[&n];
        hom_to_derivation(&self.p, &s.layout, n, &s.space.vector(coords))
    }

    pub fn basis_derivations(&self, n: i64) -> Vec<Derivation> {
        let Some(s) = self.spaces.get(&n) else { return Vec::new() };
        s.space.basis().iter().map(|b| hom_to_derivation(&self.p, &s.layout, n, b)).collect()
    }

    /// Coordinates of a derivation, if it lies in the slice.
    pub fn coords(&self, theta: &Derivation) -> Option<Vec<Rational>> {
        let s = self.spaces.get(&theta.degree())?;
        let h = derivation_to_hom(&self.free, &s.layout, s.hom_dim, theta)?;
        s.space.coords(&h)
    }
}

impl DgLieAlgebra for DerSlice {
    fn window(&self) -> (i64, i64) {
        self.complex.window()
    }

    fn dim(&self, degree: i64) -> usize {
        self.spaces.get(&degree).map_or(0, |s| s.space.dim())
    }

    fn differential(&self, degree: i64, x: &[Rational]) -> Option<Vec<Rational>> {
        let m = self.complex.d(degree)?;
        Some(m.mul_vec(x))
    }

    fn bracket(&self, i: i64, x: &[Rational], j: i64, y: &[Rational]) -> Option<Vec<Rational>> {
        if !self.knows(i + j) {
            return None;
        }
        let b = self.derivation(i, x).bracket(&self.derivation(j, y));
        Some(self.coords(&b).expect("the slice is closed under brackets"))
    }

    fn basis_name(&self, degree: i64, i: usize) -> String {
        format!("der{degree}.{i}")
    }
}

/// `Der(L rel sub)` on degrees `min..=max`.
pub fn der_complex(p: &Arc<Presentation>, rel: Option<&str>, min: i64, max: i64) -> Result<DerSlice, DgError> {
    if min > max {
        return Err(ComplexError::WindowTooNarrow {
            degree: min,
            missing: min,
            min,
            max,
        }
        .into());
    }
    let (free, constraints) = free_generators(p, rel)?;
    let spaces = (min..=max).map(|n| (n, der_space(p, &free, &constraints, n))).collect();
    DerSlice::assemble(p.clone(), rel, free, min, max, spaces)
}

/// The unipotent part: full derivations in positive degrees; in degree 0
/// the cycles that kill ρ and act trivially on the indecomposables relative
/// to `rel`; nothing in negative degrees. The window is `(-1, max)`.
pub fn deru(p: &Arc<Presentation>, rel: Option<&str>, rho: Option<&Rho>, max: i64, mode: DeruMode) -> Result<DerSlice, DgError> {
    if mode == DeruMode::TrivialDifferential {
        if let Some(i) = (0..p.ngens()).find(|&i| !p.d_of(i).is_zero()) {
            return Err(DgError::ModeUnavailable(p.lie().name(i).to_string()));
        }
    }
    if let Some(r) = rho {
        r.check_chain_map(p)?;
    }
    let max = max.max(0);
    let (free, constraints) = free_generators(p, rel)?;
    let lie = p.lie();
    let full_m1 = der_space(p, &free, &constraints, -1);
    let full_0 = der_space(p, &free, &constraints, 0);

    // cycles in degree 0
    let mut cycles = Vec::new();
    if full_0.space.dim() > 0 {
        let mut cols = Vec::new();
        for b in full_0.space.basis() {
            let dtheta = hom_to_derivation(p, &full_0.layout, 0, b).d_commutator();
            let v = derivation_to_hom(&free, &full_m1.layout, full_m1.hom_dim, &dtheta)
                .and_then(|h| full_m1.space.coords(&h))
                .expect("the differential preserves the rel conditions");
            cols.push(v);
        }
        let m = Matrix::from_columns(full_m1.space.dim(), &cols);
        for c in Subspace::kernel(&m).basis() {
            cycles.push(full_0.space.vector(c));
        }
    }
    let z0 = Subspace::span(full_0.hom_dim, &cycles);

    // linear conditions on degree-0 hom coordinates
    let ind = p.indecomposables(rel)?;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &(g, start, len) in &full_0.layout {
        if len == 0 {
            continue;
        }
        let k = lie.gen_degree(g);
        let basis = lie.basis(k);
        let letter_pos = |j: usize| basis.position(&crate::freelie::BasisKey::letter(j as u16));
        if let Some(rho) = rho {
            for t in 0..rho.pi().dim(k) {
                let mut row = vec![Rational::zero(); full_0.hom_dim];
                for j in 0..lie.ngens() {
                    if lie.gen_degree(j) == k {
                        if let Some(pos) = letter_pos(j) {
                            row[start + pos] = rho.value(j)[t].clone();
                        }
                    }
                }
                rows.push(row);
            }
        }
        if ind.position(g).is_some() {
            for &j in &ind.generators {
                if lie.gen_degree(j) == k {
                    let mut row = vec![Rational::zero(); full_0.hom_dim];
                    row[start + letter_pos(j).expect("generator is a basis element")] = num_traits::One::one();
                    rows.push(row);
                }
            }
        }
    }
    let deg0 = if rows.is_empty() {
        z0
    } else {
        z0.intersect_kernel(&Matrix::from_rows(rows.len(), full_0.hom_dim, rows))
    };

    let mut spaces = BTreeMap::new();
    spaces.insert(
        -1,
        DerSpace {
            space: Subspace::zero(full_m1.hom_dim),
            ..full_m1
        },
    );
    spaces.insert(0, DerSpace { space: deg0, ..full_0 });
    for n in 1..=max {
        spaces.insert(n, der_space(p, &free, &constraints, n));
    }
    DerSlice::assemble(p.clone(), rel, free, -1, max, spaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::check_structure;
    use crate::report::all_pass;

    fn ab() -> Arc<Presentation> {
        Arc::new(
            Presentation::builder()
                .generator("a", 2)
                .generator("b", 2)
                .sub_elements("omega", &["[a,b]"])
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn small_dimensions() {
        let x = Arc::new(Presentation::builder().generator("x", 1).build().unwrap());
        let s = der_complex(&x, None, 0, 1).unwrap();
        assert_eq!((s.dim(0), s.dim(1)), (1, 1));
        let p = ab();
        assert_eq!(der_complex(&p, None, 0, 0).unwrap().dim(0), 4);
        assert_eq!(der_complex(&p, Some("omega"), 0, 0).unwrap().dim(0), 3);
        let u = deru(&p, Some("omega"), None, 2, DeruMode::TrivialDifferential).unwrap();
        assert_eq!(u.dim(0), 0);
        let full = der_complex(&p, Some("omega"), 0, 4).unwrap();
        for n in 1..=2 {
            assert_eq!(u.dim(n), full.dim(n));
        }
    }

    #[test]
    fn dg_lie_structure() {
        let p = Arc::new(
            Presentation::builder()
                .generator("a", 1)
                .generator("c", 3)
                .generator("e", 5)
                .differential("c", "1/2*[a,a]")
                .differential("e", "[a,c]")
                .build()
                .unwrap(),
        );
        let s = der_complex(&p, None, -2, 3).unwrap();
        s.complex().check_d_squared().unwrap();
        assert!(all_pass(&check_structure(&s, -1, 1, 400)));
        assert!(matches!(
            deru(&p, None, None, 2, DeruMode::TrivialDifferential),
            Err(DgError::ModeUnavailable(_))
        ));
    }
}
