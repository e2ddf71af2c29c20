//! Derivations of quasi-free presentations and their complexes.

pub mod glue;
pub mod slice;

use crate::algebra::linmap::GradedLinearMap;
use crate::algebra::rational::{odd, Rational};
use crate::error::DgError;
use crate::freelie::morphism::{indec_matrix, Morphism};
use crate::freelie::tensor::Tensor;
use crate::freelie::{LieElement, Presentation, SubSpec};
use num_traits::One;
use std::sync::Arc;

pub use glue::{check_glue_brackets, forget_compare, forget_pullback, glue_derivations, restrict_derivation, ForgetComparison, ForgetInput, ForgetPullback};
pub use slice::{der_complex, deru, DerSlice, DeruMode};

/// A homogeneous derivation, given by its values on generators.
#[derive(Debug, Clone)]
pub struct Derivation {
    p: Arc<Presentation>,
    degree: i64,
    values: Vec<LieElement>,
    tensors: Vec<Arc<Tensor>>,
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.values == other.values && *self.p == *other.p
    }
}

impl Derivation {
    pub fn new(p: Arc<Presentation>, degree: i64, values: Vec<LieElement>) -> Result<Derivation, DgError> {
        if values.len() != p.ngens() {
            return Err(DgError::DimensionMismatch(format!(
                "{} values for {} generators",
                values.len(),
                p.ngens()
            )));
        }
        let lie = p.lie().clone();
        let mut vs = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            let want = lie.gen_degree(i) + degree;
            if v.is_zero() {
                vs.push(LieElement::zero(want));
            } else if v.degree() != want {
                return Err(DgError::Invalid(format!(
                    "value on {} has degree {}, expected {want}",
                    lie.name(i),
                    v.degree()
                )));
            } else {
                vs.push(v);
            }
        }
        let tensors = vs.iter().map(|v| Arc::new(lie.to_tensor(v))).collect();
        Ok(Derivation {
            p,
            degree,
            values: vs,
            tensors,
        })
    }

    pub fn zero(p: Arc<Presentation>, degree: i64) -> Derivation {
        let values = (0..p.ngens()).map(|i| LieElement::zero(p.lie().gen_degree(i) + degree)).collect();
        Derivation::new(p, degree, values).expect("zero values have the right degrees")
    }

    /// Values given as expressions; unlisted generators map to zero.
    pub fn from_exprs(p: Arc<Presentation>, degree: i64, values: &[(String, String)]) -> Result<Derivation, DgError> {
        let mut v: Vec<LieElement> = (0..p.ngens()).map(|i| LieElement::zero(p.lie().gen_degree(i) + degree)).collect();
        for (name, text) in values {
            let i = p
                .lie()
                .position(name)
                .ok_or_else(|| DgError::InvalidPresentation(format!("value given for unknown generator {name:?}")))?;
            v[i] = p.parse(text)?;
        }
        Derivation::new(p, degree, v)
    }

    /// The differential, as a derivation of degree -1.
    pub fn differential(p: Arc<Presentation>) -> Derivation {
        let values = p.d_values().to_vec();
        Derivation::new(p, -1, values).expect("validated presentation")
    }

    /// `ad_x = [x, -]`.
    pub fn inner(p: Arc<Presentation>, x: &LieElement) -> Derivation {
        let lie = p.lie().clone();
        let values = (0..p.ngens()).map(|i| lie.bracket(x, &lie.generator(i))).collect();
        Derivation::new(p, x.degree(), values).expect("brackets have the right degrees")
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.p
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn values(&self) -> &[LieElement] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> &LieElement {
        &self.values[generator]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(LieElement::is_zero)
    }

    /// The Leibniz extension applied to an element.
    pub fn eval(&self, x: &LieElement) -> LieElement {
        let lie = self.p.lie();
        let degree = x.degree() + self.degree;
        if x.is_zero() {
            return LieElement::zero(degree);
        }
        let t = lie.derive_tensor(&lie.to_tensor(x), self.degree, &self.tensors, None);
        lie.from_tensor(&t, degree)
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        assert_eq!(self.degree, other.degree);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Derivation::new(self.p.clone(), self.degree, values).expect("same degrees")
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        let values = self.values.iter().map(|a| a.scale(c)).collect();
        Derivation::new(self.p.clone(), self.degree, values).expect("same degrees")
    }

    pub fn neg(&self) -> Derivation {
        self.scale(&-Rational::one())
    }

    /// Composition on generators `θ(ψ(x))`; not a derivation in general.
    fn compose_values(&self, other: &Derivation) -> Vec<LieElement> {
        other.values.iter().map(|v| self.eval(v)).collect()
    }

    /// `[θ,ψ] = θψ - (-1)^{|θ||ψ|} ψθ`.
    pub fn bracket(&self, other: &Derivation) -> Derivation {
        let a = self.compose_values(other);
        let b = other.compose_values(self);
        let s = if odd(self.degree * other.degree) { Rational::one() } else { -Rational::one() };
        let values = a
            .iter()
            .zip(&b)
            .map(|(x, y)| {
                let mut r = x.clone();
                r.add_scaled(y, &s);
                r
            })
            .collect();
        Derivation::new(self.p.clone(), self.degree + other.degree, values).expect("degrees add")
    }

    /// `Dθ = [d, θ] = d∘θ - (-1)^{|θ|} θ∘d`.
    pub fn d_commutator(&self) -> Derivation {
        let lie = self.p.lie();
        let s = if odd(self.degree) { Rational::one() } else { -Rational::one() };
        let values = (0..lie.ngens())
            .map(|i| {
                let mut r = self.p.d(&self.values[i]);
                r.add_scaled(&self.eval(self.p.d_of(i)), &s);
                if r.is_zero() {
                    LieElement::zero(lie.gen_degree(i) + self.degree - 1)
                } else {
                    r
                }
            })
            .collect();
        Derivation::new(self.p.clone(), self.degree - 1, values).expect("degree drops by one")
    }

    /// Whether the derivation vanishes on the named subalgebra.
    pub fn vanishes_on(&self, sub: &str) -> Result<bool, DgError> {
        Ok(match self.p.sub(sub)? {
            SubSpec::GeneratorSplit(ix) => ix.iter().all(|&i| self.values[i].is_zero()),
            SubSpec::ElementGenerated(els) => els.iter().all(|e| self.eval(e).is_zero()),
        })
    }

    /// The induced map on indecomposables relative to `sub`, of degree |θ|.
    pub fn indec_action(&self, sub: Option<&str>) -> Result<GradedLinearMap, DgError> {
        let ind = self.p.indecomposables(sub)?;
        let lie = self.p.lie();
        Ok(indec_matrix(&ind, &ind, self.degree, |g| lie.linear_part(&self.values[g])))
    }

    /// Largest `n` with `(θ·)^n` nonzero on some generator, if `θ` acts
    /// nilpotently on generators within `bound` steps.
    pub fn nilpotency_index(&self, bound: usize) -> Option<usize> {
        let mut current: Vec<LieElement> = (0..self.p.ngens()).map(|i| self.p.lie().generator(i)).collect();
        for n in 0..=bound {
            if current.iter().all(LieElement::is_zero) {
                return Some(n.saturating_sub(1));
            }
            current = current.iter().map(|x| self.eval(x)).collect();
        }
        None
    }

    /// `e(θ) = Σ θⁿ/n!` for a nilpotent degree-0 derivation.
    pub fn exp(&self) -> Result<Morphism, DgError> {
        if self.degree != 0 {
            return Err(DgError::Invalid("only degree-0 derivations exponentiate".into()));
        }
        let lie = self.p.lie();
        let bound = lie.degrees().iter().copied().max().unwrap_or(0).max(1) as usize * (lie.ngens() + 1) + 1;
        let n = self
            .nilpotency_index(bound)
            .ok_or_else(|| DgError::NotNilpotent(format!("θ^{bound} is nonzero on generators")))?;
        let mut images = Vec::with_capacity(lie.ngens());
        for i in 0..lie.ngens() {
            let mut term = lie.generator(i);
            let mut total = term.clone();
            let mut fact = Rational::one();
            for k in 1..=n.max(1) {
                term = self.eval(&term);
                if term.is_zero() {
                    break;
                }
                fact *= Rational::from_integer((k as i64).into());
                total.add_scaled(&term, &(Rational::one() / &fact));
            }
            images.push(total);
        }
        Morphism::new(self.p.clone(), self.p.clone(), images)
    }
}

/// An f-derivation `L' -> L` along a morphism f, given on generators of L'.
#[derive(Debug, Clone)]
pub struct FDerivation {
    f: Morphism,
    degree: i64,
    values: Vec<Arc<Tensor>>,
}

impl FDerivation {
    pub fn new(f: Morphism, degree: i64, values: &[LieElement]) -> Result<FDerivation, DgError> {
        let src = f.source().lie().clone();
        if values.len() != src.ngens() {
            return Err(DgError::DimensionMismatch("one value per source generator".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_zero() && v.degree() != src.gen_degree(i) + degree {
                return Err(DgError::Invalid(format!("value on {} has the wrong degree", src.name(i))));
            }
        }
        let values = values.iter().map(|v| Arc::new(f.target().lie().to_tensor(v))).collect();
        Ok(FDerivation { f, degree, values })
    }

    /// `θ∘f` for a derivation θ of the target.
    pub fn after(theta: &Derivation, f: &Morphism) -> FDerivation {
        let values: Vec<LieElement> = f.images().iter().map(|x| theta.eval(x)).collect();
        FDerivation::new(f.clone(), theta.degree(), &values).expect("degrees match")
    }

    /// `f∘θ'` for a derivation θ' of the source.
    pub fn before(f: &Morphism, theta: &Derivation) -> FDerivation {
        let values: Vec<LieElement> = theta.values().iter().map(|x| f.apply(x)).collect();
        FDerivation::new(f.clone(), theta.degree(), &values).expect("degrees match")
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The twisted Leibniz extension applied to an element of the source.
    pub fn eval(&self, x: &LieElement) -> LieElement {
        let src = self.f.source().lie();
        let t = src.derive_tensor(&src.to_tensor(x), self.degree, &self.values, Some(self.f.image_tensors()));
        self.f.target().lie().from_tensor(&t, x.degree() + self.degree)
    }

    pub fn values_equal(&self, other: &FDerivation) -> bool {
        self.degree == other.degree && self.values == other.values
    }
}
