//! Models of manifolds whose boundary is a sphere: a graded symplectic
//! space, a minimal differential killing ω, and Pontryagin functionals;
//! plus the stabilized model with β and γ adjoined.

use super::symplectic::SymplecticSpace;
use crate::algebra::basis::GradedBasis;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{is_zero_vec, Rational};
use crate::derivations::Derivation;
use crate::error::DgError;
use crate::freelie::{FreeLie, LieElement, Morphism, Presentation, Rho, SubSpec};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Name of the element-generated sub spanned by ω.
pub const OMEGA: &str = "omega";
/// Name of the generator-split sub spanned by β in the stabilized model.
pub const BETA: &str = "beta";

#[derive(Debug, Clone)]
pub struct ManifoldModel {
    dimension: i64,
    space: SymplecticSpace,
    pontryagin: BTreeMap<i64, Vec<Rational>>,
    presentation: Arc<Presentation>,
    omega: LieElement,
}

impl ManifoldModel {
    /// Validates the data and builds `𝕃V` with the sub `omega`.
    ///
    /// `pontryagin` maps a degree `4i-1` to the values of the functional on
    /// the generators of that degree, in basis order.
    pub fn new(
        dimension: i64,
        generators: &[(String, i64)],
        pairing: Matrix,
        differential: &[(String, String)],
        pontryagin: BTreeMap<i64, Vec<Rational>>,
    ) -> Result<ManifoldModel, DgError> {
        let m = dimension - 2;
        let lie = Arc::new(FreeLie::new(generators)?);
        let basis = GradedBasis::new(generators.iter().map(|(n, d)| (n.clone(), *d)))?;
        for (&k, values) in &pontryagin {
            if k <= 0 || (k + 1) % 4 != 0 {
                return Err(DgError::BadPontryaginDegrees(k));
            }
            if values.len() != basis.dim(k) {
                return Err(DgError::DimensionMismatch(format!(
                    "the functional in degree {k} has {} values for {} generators",
                    values.len(),
                    basis.dim(k)
                )));
            }
        }
        let space = SymplecticSpace::new(basis, m, pairing)?;
        let mut d: Vec<LieElement> = (0..lie.ngens()).map(|i| LieElement::zero(lie.gen_degree(i) - 1)).collect();
        for (name, text) in differential {
            let i = lie.position(name).ok_or_else(|| DgError::UnknownGenerator {
                name: name.clone(),
                offset: 0,
            })?;
            let x = lie.parse(text)?;
            if !x.is_zero() && x.degree() != lie.gen_degree(i) - 1 {
                return Err(DgError::InvalidPresentation(format!(
                    "d({name}) has degree {}, expected {}",
                    x.degree(),
                    lie.gen_degree(i) - 1
                )));
            }
            d[i] = if x.is_zero() { LieElement::zero(lie.gen_degree(i) - 1) } else { x };
        }
        for (i, x) in d.iter().enumerate() {
            if !is_zero_vec(&lie.linear_part(x)) {
                return Err(DgError::NotMinimal(lie.name(i).to_string()));
            }
        }
        let omega = space.omega(&lie, 0);
        let mut subs = BTreeMap::new();
        subs.insert(OMEGA.to_string(), SubSpec::ElementGenerated(vec![omega.clone()]));
        let presentation = Presentation::assemble(lie.clone(), d, subs);
        let d_omega = presentation.d(&omega);
        if !d_omega.is_zero() {
            return Err(DgError::OmegaNotClosed(lie.format(&d_omega)));
        }
        if let Some(v) = presentation.validate().into_iter().find(|v| !v.pass) {
            return Err(DgError::InvalidPresentation(match v.witness {
                Some(w) => format!("{}: {w}", v.check),
                None => v.check,
            }));
        }
        Ok(ManifoldModel {
            dimension,
            space,
            pontryagin,
            presentation: Arc::new(presentation),
            omega,
        })
    }

    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    /// The degree of ω, which is `dimension - 2`.
    pub fn m(&self) -> i64 {
        self.space.m()
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn pontryagin(&self) -> &BTreeMap<i64, Vec<Rational>> {
        &self.pontryagin
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn omega(&self) -> &LieElement {
        &self.omega
    }

    /// Π: one copy of Q in each degree `4i-1` up to `top`.
    pub fn pi(top: i64) -> GradedBasis {
        let mut pi = GradedBasis::default();
        let mut k = 3;
        while k <= top {
            pi.push(format!("pi{k}"), k).expect("distinct names");
            k += 4;
        }
        pi
    }

    /// Value of the functional on generator `g`, zero if none is given.
    pub fn pontryagin_value(&self, g: usize) -> Rational {
        let basis = self.space.basis();
        self.pontryagin
            .get(&basis.degree(g))
            .map_or_else(Rational::zero, |v| v[basis.local_index(g)].clone())
    }

    /// The Pontryagin map as ρ on the generators of `p`: the first
    /// `dim V` generators carry the functionals, the rest map to zero.
    pub fn rho_on(&self, p: &Presentation, top: i64) -> Result<Rho, DgError> {
        let pi = ManifoldModel::pi(top);
        let values = (0..p.ngens())
            .map(|g| {
                let k = p.lie().gen_degree(g);
                let mut v = vec![Rational::zero(); pi.dim(k)];
                if g < self.space.dim() && !v.is_empty() {
                    v[0] = self.pontryagin_value(g);
                }
                v
            })
            .collect();
        Rho::new(p, pi, values)
    }

    pub fn rho(&self, top: i64) -> Result<Rho, DgError> {
        self.rho_on(&self.presentation, top)
    }

    /// The stabilized model.
    pub fn tilde(&self) -> Result<TildeModel, DgError> {
        TildeModel::new(self)
    }
}

/// `L̃ = (𝕃(V, β, γ), dγ = ω - β)` with the sub `beta`, the inclusion of `L`
/// and the projection `p: L̃ -> L` sending β to ω and γ to 0.
#[derive(Debug, Clone)]
pub struct TildeModel {
    pub presentation: Arc<Presentation>,
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub beta: usize,
    pub gamma: usize,
}

fn fresh(lie: &FreeLie, base: &str) -> String {
    let mut name = base.to_string();
    while lie.position(&name).is_some() {
        name.push('_');
    }
    name
}

impl TildeModel {
    pub fn new(model: &ManifoldModel) -> Result<TildeModel, DgError> {
        let l = &model.presentation;
        let lie = l.lie();
        let m = model.m();
        let mut gens: Vec<(String, i64)> = lie.names().iter().cloned().zip(lie.degrees().iter().copied()).collect();
        let (beta, gamma) = (gens.len(), gens.len() + 1);
        gens.push((fresh(lie, "beta"), m));
        gens.push((fresh(lie, "gamma"), m + 1));
        let tl = Arc::new(FreeLie::new(&gens)?);
        let embed: Vec<Arc<_>> = (0..lie.ngens()).map(|i| Arc::new(tl.to_tensor(&tl.generator(i)))).collect();
        let push = |x: &LieElement| tl.from_tensor(&lie.substitute_tensor(&lie.to_tensor(x), &embed), x.degree());
        let mut d: Vec<LieElement> = l.d_values().iter().map(push).collect();
        d.push(LieElement::zero(m - 1));
        d.push(push(model.omega()).sub(&tl.generator(beta)));
        let mut subs = BTreeMap::new();
        subs.insert(BETA.to_string(), SubSpec::GeneratorSplit(vec![beta]));
        let presentation = Arc::new(Presentation::new(tl.clone(), d, subs)?);
        let inclusion = Morphism::new(l.clone(), presentation.clone(), (0..lie.ngens()).map(|i| tl.generator(i)).collect())?;
        let mut images: Vec<LieElement> = (0..lie.ngens()).map(|i| lie.generator(i)).collect();
        images.push(model.omega().clone());
        images.push(LieElement::zero(m + 1));
        let projection = Morphism::new(presentation.clone(), l.clone(), images)?;
        Ok(TildeModel {
            presentation,
            inclusion,
            projection,
            beta,
            gamma,
        })
    }

    /// Extends a derivation of `L` by zero on β and γ.
    pub fn xi(&self, theta: &Derivation) -> Derivation {
        let n = theta.degree();
        let lie = self.presentation.lie();
        let mut values: Vec<LieElement> = theta.values().iter().map(|v| self.inclusion.apply(v)).collect();
        values.push(LieElement::zero(lie.gen_degree(self.beta) + n));
        values.push(LieElement::zero(lie.gen_degree(self.gamma) + n));
        Derivation::new(self.presentation.clone(), n, values).expect("degrees match")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::report::all_pass;

    pub fn w11() -> ManifoldModel {
        ManifoldModel::new(
            6,
            &[("a".into(), 2), ("b".into(), 2)],
            Matrix::from_i64(2, 2, &[0, 1, -1, 0]),
            &[],
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn validation_of_manifold_models() {
        let w = w11();
        assert_eq!(w.presentation().format(w.omega()), "[a,b]");
        let bad = ManifoldModel::new(
            6,
            &[("a".into(), 2), ("b".into(), 2)],
            Matrix::from_i64(2, 2, &[0, 1, -1, 0]),
            &[("a".into(), "b".into())],
            BTreeMap::new(),
        );
        assert!(bad.is_err());
        let p = ManifoldModel::new(
            10,
            &[("x".into(), 1), ("y".into(), 7)],
            Matrix::from_i64(2, 2, &[0, 1, 1, 0]),
            &[],
            BTreeMap::from([(7, vec![q(1)])]),
        )
        .unwrap();
        assert_eq!(p.pontryagin_value(1), q(1));
        let bad = ManifoldModel::new(
            10,
            &[("x".into(), 1), ("y".into(), 7)],
            Matrix::from_i64(2, 2, &[0, 1, 1, 0]),
            &[],
            BTreeMap::from([(1, vec![q(1)])]),
        );
        assert!(matches!(bad, Err(DgError::BadPontryaginDegrees(1))));
    }

    #[test]
    fn tilde_model_of_w11() {
        let t = w11().tilde().unwrap();
        let p = &t.presentation;
        assert!(all_pass(&p.validate()));
        assert_eq!(p.format(p.d_of(t.gamma)), "-1*beta + [a,b]");
        assert!(all_pass(&t.projection.check(None, None)));
        assert!(p.is_minimal(Some(BETA)).unwrap());
        assert!(!p.is_minimal(None).unwrap());
        let ind = p.indecomposables(None).unwrap();
        assert_eq!(ind.basis().len(), 4);
        let a: Vec<usize> = p.homology(1, 8).unwrap().iter().map(|h| h.betti).collect();
        let b: Vec<usize> = w11().presentation().homology(1, 8).unwrap().iter().map(|h| h.betti).collect();
        assert_eq!(a, b);
    }
}
