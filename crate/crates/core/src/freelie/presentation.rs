//! Quasi-free dg Lie algebras: a free graded Lie algebra, a differential
//! given on generators, and named subalgebras.

use super::algebra::{FreeLie, LieElement};
use super::expr::Tree;
use super::tensor::Tensor;
use crate::algebra::basis::GradedBasis;
use crate::algebra::complex::ChainComplexSlice;
use crate::algebra::matrix::{Matrix, Subspace};
use crate::algebra::rational::Rational;
use crate::error::DgError;
use crate::report::{first_failure, Verdict};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A designated subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubSpec {
    /// The subalgebra generated by some of the generators.
    GeneratorSplit(Vec<usize>),
    /// The subalgebra generated by a list of elements.
    ElementGenerated(Vec<LieElement>),
}

/// Unvalidated presentation data, as read from a file or a builder.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PresentationSpec {
    pub generators: Vec<(String, i64)>,
    pub differential: Vec<(String, String)>,
    pub subalgebras: Vec<(String, RawSub)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawSub {
    Generators(Vec<String>),
    Elements(Vec<String>),
}

impl PresentationSpec {
    pub fn generator(mut self, name: &str, degree: i64) -> Self {
        self.generators.push((name.to_string(), degree));
        self
    }

    pub fn differential(mut self, name: &str, expr: &str) -> Self {
        self.differential.push((name.to_string(), expr.to_string()));
        self
    }

    pub fn sub_generators(mut self, name: &str, gens: &[&str]) -> Self {
        self.subalgebras
            .push((name.to_string(), RawSub::Generators(gens.iter().map(|s| s.to_string()).collect())));
        self
    }

    pub fn sub_elements(mut self, name: &str, elements: &[&str]) -> Self {
        self.subalgebras
            .push((name.to_string(), RawSub::Elements(elements.iter().map(|s| s.to_string()).collect())));
        self
    }

    /// Builds and validates.
    pub fn build(self) -> Result<Presentation, DgError> {
        Presentation::from_spec(&self)
    }
}

/// Quotient of a presentation by decomposables and a subalgebra's ideal.
#[derive(Debug, Clone)]
pub struct Indecomposables {
    /// Positions of the generators spanning the quotient, in basis order.
    pub generators: Vec<usize>,
    pub complex: ChainComplexSlice,
}

impl Indecomposables {
    pub fn position(&self, generator: usize) -> Option<usize> {
        self.generators.iter().position(|&g| g == generator)
    }

    pub fn basis(&self) -> &GradedBasis {
        self.complex.basis()
    }

    pub fn max_degree(&self) -> i64 {
        self.basis().max_degree().unwrap_or(0)
    }
}

#[derive(Debug)]
pub struct Presentation {
    lie: Arc<FreeLie>,
    d: Vec<LieElement>,
    d_tensors: Vec<Arc<Tensor>>,
    subs: BTreeMap<String, SubSpec>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        *self.lie == *other.lie && self.d == other.d && self.subs == other.subs
    }
}

impl Presentation {
    pub fn builder() -> PresentationSpec {
        PresentationSpec::default()
    }

    /// Builds a presentation without checking d² = 0 or sub closure.
    pub fn from_spec_unchecked(spec: &PresentationSpec) -> Result<Presentation, DgError> {
        let lie = Arc::new(FreeLie::new(&spec.generators)?);
        let mut d: Vec<LieElement> = (0..lie.ngens()).map(|i| LieElement::zero(lie.gen_degree(i) - 1)).collect();
        let mut seen = vec![false; lie.ngens()];
        for (name, text) in &spec.differential {
            let i = lie
                .position(name)
                .ok_or_else(|| DgError::InvalidPresentation(format!("differential given for unknown generator {name:?}")))?;
            if seen[i] {
                return Err(DgError::InvalidPresentation(format!("differential of {name:?} given twice")));
            }
            seen[i] = true;
            let value = lie.parse(text)?;
            d[i] = if value.is_zero() { LieElement::zero(lie.gen_degree(i) - 1) } else { value };
        }
        let mut subs = BTreeMap::new();
        for (name, raw) in &spec.subalgebras {
            let sub = match raw {
                RawSub::Generators(gens) => {
                    let mut ix = Vec::new();
                    for g in gens {
                        let i = lie.position(g).ok_or_else(|| DgError::UnknownGenerator {
                            name: g.clone(),
                            offset: 0,
                        })?;
                        if !ix.contains(&i) {
                            ix.push(i);
                        }
                    }
                    SubSpec::GeneratorSplit(ix)
                }
                RawSub::Elements(els) => {
                    SubSpec::ElementGenerated(els.iter().map(|e| lie.parse(e)).collect::<Result<_, _>>()?)
                }
            };
            if subs.insert(name.clone(), sub).is_some() {
                return Err(DgError::InvalidPresentation(format!("subalgebra {name:?} given twice")));
            }
        }
        Ok(Presentation::assemble(lie, d, subs))
    }

    pub fn from_spec(spec: &PresentationSpec) -> Result<Presentation, DgError> {
        let p = Presentation::from_spec_unchecked(spec)?;
        match first_failure(&p.validate()) {
            None => Ok(p),
            Some(f) => Err(DgError::InvalidPresentation(f)),
        }
    }

    /// Assembles a presentation from parts, without validation.
    pub fn assemble(lie: Arc<FreeLie>, d: Vec<LieElement>, subs: BTreeMap<String, SubSpec>) -> Presentation {
        assert_eq!(d.len(), lie.ngens());
        let d_tensors = d.iter().map(|x| Arc::new(lie.to_tensor(x))).collect();
        Presentation { lie, d, d_tensors, subs }
    }

    pub fn new(lie: Arc<FreeLie>, d: Vec<LieElement>, subs: BTreeMap<String, SubSpec>) -> Result<Presentation, DgError> {
        let p = Presentation::assemble(lie, d, subs);
        match first_failure(&p.validate()) {
            None => Ok(p),
            Some(f) => Err(DgError::InvalidPresentation(f)),
        }
    }

    pub fn to_spec(&self) -> PresentationSpec {
        let lie = &self.lie;
        let generators = (0..lie.ngens()).map(|i| (lie.name(i).to_string(), lie.gen_degree(i))).collect();
        let differential = (0..lie.ngens())
            .filter(|&i| !self.d[i].is_zero())
            .map(|i| (lie.name(i).to_string(), lie.format(&self.d[i])))
            .collect();
        let subalgebras = self
            .subs
            .iter()
            .map(|(name, s)| {
                let raw = match s {
                    SubSpec::GeneratorSplit(ix) => RawSub::Generators(ix.iter().map(|&i| lie.name(i).to_string()).collect()),
                    SubSpec::ElementGenerated(els) => RawSub::Elements(els.iter().map(|e| lie.format(e)).collect()),
                };
                (name.clone(), raw)
            })
            .collect();
        PresentationSpec {
            generators,
            differential,
            subalgebras,
        }
    }

    pub fn lie(&self) -> &Arc<FreeLie> {
        &self.lie
    }

    pub fn ngens(&self) -> usize {
        self.lie.ngens()
    }

    pub fn d_of(&self, generator: usize) -> &LieElement {
        &self.d[generator]
    }

    pub fn d_values(&self) -> &[LieElement] {
        &self.d
    }

    pub fn d_tensors(&self) -> &[Arc<Tensor>] {
        &self.d_tensors
    }

    pub fn is_d_zero(&self) -> bool {
        self.d.iter().all(LieElement::is_zero)
    }

    pub fn subs(&self) -> &BTreeMap<String, SubSpec> {
        &self.subs
    }

    pub fn sub(&self, name: &str) -> Result<&SubSpec, DgError> {
        self.subs.get(name).ok_or_else(|| DgError::UnknownSub(name.to_string()))
    }

    /// Generators of a generator-split sub, or an error for element subs.
    pub fn sub_generators(&self, name: &str) -> Result<&[usize], DgError> {
        match self.sub(name)? {
            SubSpec::GeneratorSplit(ix) => Ok(ix),
            SubSpec::ElementGenerated(_) => Err(DgError::UnsupportedSub {
                sub: name.to_string(),
                reason: "a generator-split subalgebra is required".into(),
            }),
        }
    }

    pub fn parse(&self, text: &str) -> Result<LieElement, DgError> {
        self.lie.parse(text)
    }

    pub fn format(&self, x: &LieElement) -> String {
        self.lie.format(x)
    }

    pub fn lie_basis(&self, degree: i64) -> Vec<Tree> {
        if degree < 1 {
            return Vec::new();
        }
        self.lie.basis(degree).keys.iter().map(|k| self.lie.key_tree(k)).collect()
    }

    /// The differential applied to an element.
    pub fn d(&self, x: &LieElement) -> LieElement {
        if x.is_zero() {
            return LieElement::zero(x.degree() - 1);
        }
        let t = self.lie.derive_tensor(&self.lie.to_tensor(x), -1, &self.d_tensors, None);
        self.lie.from_tensor(&t, x.degree() - 1)
    }

    /// Span of a subalgebra in one degree, in basis coordinates.
    pub fn sub_span(&self, name: &str, degree: i64) -> Result<Subspace, DgError> {
        let sub = self.sub(name)?;
        Ok(self.span_of(sub, degree))
    }

    pub fn span_of(&self, sub: &SubSpec, degree: i64) -> Subspace {
        let n = self.lie.dim(degree);
        if n == 0 {
            return Subspace::zero(0);
        }
        match sub {
            SubSpec::GeneratorSplit(ix) => {
                let basis = self.lie.basis(degree);
                let vecs: Vec<Vec<Rational>> = basis
                    .keys
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| k.word().iter().all(|&c| ix.contains(&(c as usize))))
                    .map(|(i, _)| {
                        let mut v = vec![Rational::zero(); n];
                        v[i] = num_traits::One::one();
                        v
                    })
                    .collect();
                Subspace::span(n, &vecs)
            }
            SubSpec::ElementGenerated(els) => Subspace::span(n, &self.lie.generated_span(els, degree)),
        }
    }

    /// Checks generator degrees, the degree of d, d² = 0 and closure of
    /// each subalgebra under d. Failures carry a witness.
    pub fn validate(&self) -> Vec<Verdict> {
        let lie = &self.lie;
        let mut out = vec![Verdict::pass("generator degrees >= 1")];
        let mut bad_degree = Vec::new();
        for i in 0..lie.ngens() {
            if !self.d[i].is_zero() && self.d[i].degree() != lie.gen_degree(i) - 1 {
                bad_degree.push(format!(
                    "d({}) = {} has degree {}, expected {}",
                    lie.name(i),
                    lie.format(&self.d[i]),
                    self.d[i].degree(),
                    lie.gen_degree(i) - 1
                ));
            }
        }
        if !bad_degree.is_empty() {
            out.push(Verdict::fail("d lowers degree by 1", bad_degree.join("; ")));
            return out;
        }
        out.push(Verdict::pass("d lowers degree by 1"));
        let mut failures = Vec::new();
        for i in 0..lie.ngens() {
            let dd = self.d(&self.d[i]);
            if !dd.is_zero() {
                failures.push(format!("d(d({})) = {}", lie.name(i), lie.format(&dd)));
            }
        }
        out.push(if failures.is_empty() {
            Verdict::pass("d^2 = 0")
        } else {
            Verdict::fail("d^2 = 0", failures.join("; "))
        });
        for (name, sub) in &self.subs {
            let check = format!("subalgebra {name} closed under d");
            let witness = match sub {
                SubSpec::GeneratorSplit(ix) => ix.iter().find_map(|&i| {
                    let dx = &self.d[i];
                    let inside = dx.terms().keys().all(|k| k.word().iter().all(|&c| ix.contains(&(c as usize))));
                    (!inside).then(|| format!("d({}) = {} leaves the subalgebra", lie.name(i), lie.format(dx)))
                }),
                SubSpec::ElementGenerated(els) => els.iter().find_map(|e| {
                    let de = self.d(e);
                    if de.is_zero() {
                        return None;
                    }
                    let span = self.span_of(sub, de.degree());
                    (!span.contains(&lie.coords(&de)))
                        .then(|| format!("d({}) = {} leaves the subalgebra", lie.format(e), lie.format(&de)))
                }),
            };
            out.push(match witness {
                None => Verdict::pass(check),
                Some(w) => Verdict::fail(check, w),
            });
        }
        out
    }

    /// The generators spanning the indecomposables relative to a sub.
    fn indec_generators(&self, sub: Option<&str>) -> Result<Vec<usize>, DgError> {
        let all: Vec<usize> = (0..self.ngens()).collect();
        let Some(name) = sub else { return Ok(all) };
        match self.sub(name)? {
            SubSpec::GeneratorSplit(ix) => Ok(all.into_iter().filter(|i| !ix.contains(i)).collect()),
            SubSpec::ElementGenerated(els) => {
                if let Some(e) = els.iter().find(|e| !self.lie.is_decomposable(e)) {
                    return Err(DgError::UnsupportedSub {
                        sub: name.to_string(),
                        reason: format!("element {} has a linear term", self.lie.format(e)),
                    });
                }
                Ok(all)
            }
        }
    }

    /// The complex of indecomposables relative to a sub (absolute when
    /// `sub` is `None`), with the linear part of d as differential. The
    /// window is `(0, top+1)`, so every degree of a generator is interior.
    pub fn indecomposables(&self, sub: Option<&str>) -> Result<Indecomposables, DgError> {
        let gens = self.indec_generators(sub)?;
        let lie = &self.lie;
        let mut basis = GradedBasis::default();
        for &g in &gens {
            basis.push(lie.name(g).to_string(), lie.gen_degree(g))?;
        }
        let top = basis.max_degree().unwrap_or(0);
        let mut blocks = Vec::new();
        for k in 2..=top {
            let cols = basis.in_degree(k);
            let rows = basis.in_degree(k - 1);
            if cols.is_empty() || rows.is_empty() {
                continue;
            }
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (c, &j) in cols.iter().enumerate() {
                let lin = lie.linear_part(&self.d[gens[j]]);
                for (r, &i) in rows.iter().enumerate() {
                    m.set(r, c, lin[gens[i]].clone());
                }
            }
            blocks.push((k, m));
        }
        Ok(Indecomposables {
            generators: gens,
            complex: ChainComplexSlice::new(0, top + 1, basis, blocks),
        })
    }

    pub fn is_minimal(&self, sub: Option<&str>) -> Result<bool, DgError> {
        Ok(self.indecomposables(sub)?.complex.differential().is_zero())
    }

    /// The chain complex of the Lie algebra itself in degrees `min..=max`.
    pub fn chain_slice(&self, min: i64, max: i64) -> ChainComplexSlice {
        let lie = &self.lie;
        let mut basis = GradedBasis::default();
        for k in min..=max {
            if k < 1 {
                continue;
            }
            for (i, key) in lie.basis(k).keys.iter().enumerate() {
                basis
                    .push(format!("{}#{i}", lie.format_key(key)), k)
                    .expect("basis names are unique");
            }
        }
        let mut blocks = Vec::new();
        for k in (min + 1).max(2)..=max {
            let (src, tgt) = (lie.dim(k), lie.dim(k - 1));
            if src == 0 || tgt == 0 {
                continue;
            }
            let cols: Vec<Vec<Rational>> = lie
                .basis(k)
                .keys
                .iter()
                .map(|key| lie.coords(&self.d(&LieElement::basis(key.clone(), k))))
                .collect();
            blocks.push((k, Matrix::from_columns(tgt, &cols)));
        }
        ChainComplexSlice::new(min, max, basis, blocks)
    }

    /// Homology of the Lie algebra in degrees `lo..=hi`.
    pub fn homology(&self, lo: i64, hi: i64) -> Result<Vec<crate::algebra::complex::HomologyGroup>, DgError> {
        Ok(self.chain_slice(lo - 1, hi + 1).homology(lo, hi)?)
    }
}

/// A linear map from generators to an abelian graded space Π, preserving
/// degree and vanishing on brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rho {
    pi: GradedBasis,
    /// For each generator, its image in coordinates of Π in that degree.
    values: Vec<Vec<Rational>>,
}

impl Rho {
    pub fn new(p: &Presentation, pi: GradedBasis, values: Vec<Vec<Rational>>) -> Result<Rho, DgError> {
        if values.len() != p.ngens() {
            return Err(DgError::DimensionMismatch(format!(
                "rho has {} values for {} generators",
                values.len(),
                p.ngens()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            let want = pi.dim(p.lie().gen_degree(i));
            if v.len() != want {
                return Err(DgError::DimensionMismatch(format!(
                    "rho({}) has {} coordinates, Π has dimension {want} in that degree",
                    p.lie().name(i),
                    v.len()
                )));
            }
        }
        Ok(Rho { pi, values })
    }

    pub fn zero(p: &Presentation, pi: GradedBasis) -> Rho {
        let values = (0..p.ngens())
            .map(|i| vec![Rational::zero(); pi.dim(p.lie().gen_degree(i))])
            .collect();
        Rho { pi, values }
    }

    pub fn pi(&self) -> &GradedBasis {
        &self.pi
    }

    pub fn value(&self, generator: usize) -> &[Rational] {
        &self.values[generator]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    /// ρ(x) in coordinates of Π in degree |x|.
    pub fn apply(&self, x: &LieElement) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.pi.dim(x.degree())];
        for (k, c) in x.terms() {
            if let Some(g) = k.as_letter() {
                for (o, v) in out.iter_mut().zip(&self.values[g as usize]) {
                    *o += c * v;
                }
            }
        }
        out
    }

    /// ρ∘d = 0 on generators.
    pub fn check_chain_map(&self, p: &Presentation) -> Result<(), DgError> {
        for i in 0..p.ngens() {
            let v = self.apply(p.d_of(i));
            if v.iter().any(|x| !x.is_zero()) {
                return Err(DgError::RhoNotChainMap(format!("rho(d({})) is nonzero", p.lie().name(i))));
            }
        }
        Ok(())
    }

    pub fn vanishes_on(&self, gens: &[usize]) -> bool {
        gens.iter().all(|&g| self.values[g].iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    #[test]
    fn homology_of_small_free_algebras() {
        let p = Presentation::builder().generator("a", 1).build().unwrap();
        let b: Vec<usize> = p.homology(1, 3).unwrap().iter().map(|h| h.betti).collect();
        assert_eq!(b, vec![1, 1, 0]);
        let p = Presentation::builder().generator("a", 2).generator("b", 2).build().unwrap();
        let b: Vec<usize> = p.homology(2, 6).unwrap().iter().map(|h| h.betti).collect();
        assert_eq!(b, vec![2, 0, 1, 0, 2]);
    }

    #[test]
    fn validation_reports_witnesses() {
        let p = Presentation::builder()
            .generator("w", 2)
            .generator("v", 3)
            .generator("u", 1)
            .differential("v", "w")
            .differential("w", "u")
            .from_unchecked();
        let verdicts = p.validate();
        assert!(!all_pass(&verdicts));
        let f = verdicts.iter().find(|v| !v.pass).unwrap();
        assert!(f.witness.as_ref().unwrap().contains("d(d(v))"));
        let bad = Presentation::builder().generator("a", 2).generator("b", 2).differential("a", "b").from_unchecked();
        assert!(!all_pass(&bad.validate()));
    }

    #[test]
    fn indecomposables_and_minimality() {
        let p = Presentation::builder()
            .generator("a", 1)
            .generator("x", 2)
            .generator("y", 4)
            .differential("y", "[a,x]")
            .sub_generators("A", &["a"])
            .sub_generators("all", &["a", "x", "y"])
            .build()
            .unwrap();
        let ind = p.indecomposables(Some("A")).unwrap();
        assert_eq!(ind.basis().entries().iter().map(|e| e.0.as_str()).collect::<Vec<_>>(), vec!["x", "y"]);
        assert!(p.is_minimal(Some("A")).unwrap());
        assert_eq!(p.indecomposables(Some("all")).unwrap().basis().len(), 0);
        let q = Presentation::builder()
            .generator("b", 4)
            .generator("g", 5)
            .differential("g", "-1*b")
            .sub_generators("B", &["b"])
            .build()
            .unwrap();
        assert!(!q.is_minimal(None).unwrap());
        assert!(q.is_minimal(Some("B")).unwrap());
    }

    #[test]
    fn element_subs() {
        let p = Presentation::builder()
            .generator("a", 2)
            .generator("b", 2)
            .sub_elements("omega", &["[a,b]"])
            .sub_elements("lin", &["a"])
            .build()
            .unwrap();
        assert_eq!(p.indecomposables(Some("omega")).unwrap().basis().len(), 2);
        assert!(matches!(p.indecomposables(Some("lin")), Err(DgError::UnsupportedSub { .. })));
        let spec = p.to_spec();
        assert_eq!(spec.build().unwrap(), p);
    }

    impl PresentationSpec {
        fn from_unchecked(self) -> Presentation {
            Presentation::from_spec_unchecked(&self).unwrap()
        }
    }
}
