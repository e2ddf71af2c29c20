//! The dg Lie algebras `τ≥0 Hom(s·indec_B(L), Π) ⋊ Der_u^ρ(L rel A)`.

use super::hom::{HomAction, HomComplex, Source};
use super::manifold::{ManifoldModel, BETA, OMEGA};
use super::outer::{outer_action_check, OuterAction, Semidirect};
use crate::derivations::{der_complex, deru, DerSlice, DeruMode};
use crate::dgla::{check_structure, DgLieAlgebra};
use crate::error::DgError;
use crate::freelie::{Presentation, Rho, SubSpec};
use crate::report::{first_failure, Verdict};
use std::sync::Arc;

/// Number of basis elements per degree list visited by the axiom checks.
pub const CHECK_LIMIT: usize = 10;

#[derive(Clone, Copy)]
pub struct GInput<'a> {
    pub presentation: &'a Arc<Presentation>,
    /// The sub the derivations are relative to.
    pub a: Option<&'a str>,
    /// The sub the indecomposables of the Hom source are relative to.
    pub b: Option<&'a str>,
    pub rho: &'a Rho,
    pub max: i64,
    pub mode: DeruMode,
}

#[derive(Clone)]
pub struct GAlgebra {
    pub der: Arc<DerSlice>,
    pub hom: Arc<HomComplex>,
    pub action: Arc<HomAction>,
    pub algebra: Semidirect,
    /// Outer-action axioms as checked during the build.
    pub verdicts: Vec<Verdict>,
}

impl GAlgebra {
    pub fn betti(&self, lo: i64, hi: i64) -> Result<Vec<usize>, DgError> {
        crate::dgla::betti(&self.algebra, lo, hi)
    }

    /// d² = 0, antisymmetry, Leibniz and Jacobi on sampled basis elements.
    pub fn structure(&self, limit: usize) -> Vec<Verdict> {
        let (lo, hi) = self.algebra.window();
        check_structure(&self.algebra, lo, hi, limit)
    }
}

fn rho_vanishes_on(p: &Presentation, rho: &Rho, b: Option<&str>) -> Result<bool, DgError> {
    let Some(name) = b else { return Ok(true) };
    Ok(match p.sub(name)? {
        SubSpec::GeneratorSplit(gens) => rho.vanishes_on(gens),
        SubSpec::ElementGenerated(els) => els.iter().all(|e| rho.apply(e).iter().all(num_traits::Zero::is_zero)),
    })
}

pub fn build_g(input: GInput<'_>) -> Result<GAlgebra, DgError> {
    let p = input.presentation;
    if !p.is_minimal(input.a)? {
        return Err(DgError::NotMinimal(format!("relative to {}", input.a.unwrap_or("nothing"))));
    }
    input.rho.check_chain_map(p)?;
    if !rho_vanishes_on(p, input.rho, input.b)? {
        return Err(DgError::RhoNotChainMap(format!("rho does not vanish on {}", input.b.unwrap_or(""))));
    }
    let der = Arc::new(deru(p, input.a, Some(input.rho), input.max, input.mode)?);
    let (lo, hi) = der.window();
    let source = Source::suspended(&p.indecomposables(input.b)?);
    let hom = Arc::new(HomComplex::new(source, input.rho.pi().clone(), lo, hi, true));
    let action = Arc::new(HomAction::new(der.clone(), hom.clone(), input.b, input.rho)?);
    let verdicts = outer_action_check(action.as_ref(), lo, hi, CHECK_LIMIT);
    if let Some(f) = first_failure(&verdicts) {
        return Err(DgError::AxiomFailure(f));
    }
    let algebra = Semidirect::new(action.clone() as Arc<dyn OuterAction>);
    Ok(GAlgebra {
        der,
        hom,
        action,
        algebra,
        verdicts,
    })
}

/// The block algebra `τ≥0 Hom(sV, Π) ⋊_{p_*} Der_u^p(𝕃V rel ω)`, on degrees
/// `-1..=max`. Π reaches the top degree of `sV` plus `max`.
pub fn build_block_g(model: &ManifoldModel, max: i64, mode: DeruMode) -> Result<GAlgebra, DgError> {
    let p = model.presentation();
    let top = p.lie().degrees().iter().copied().max().unwrap_or(0) + 1 + max;
    let rho = model.rho(top)?;
    build_g(GInput {
        presentation: p,
        a: Some(OMEGA),
        b: None,
        rho: &rho,
        max,
        mode,
    })
}

/// The same algebra built from the stabilized model: derivations of `L̃`
/// relative to β, Hom out of all of its shifted indecomposables, ρ the
/// Pontryagin map extended by zero on β and γ.
pub fn build_tilde_g(model: &ManifoldModel, max: i64) -> Result<GAlgebra, DgError> {
    let t = model.tilde()?;
    let p = &t.presentation;
    let top = p.lie().degrees().iter().copied().max().unwrap_or(0) + 1 + max;
    let rho = model.rho_on(p, top)?;
    build_g(GInput {
        presentation: p,
        a: Some(BETA),
        b: None,
        rho: &rho,
        max,
        mode: DeruMode::SemisimpleAsserted,
    })
}

/// The untruncated twisted action of `Der(𝕃V rel ω)` on `Hom(sV, Π)`:
/// derivations on `lo..=hi`, Hom on `lo-1..=hi`, twist by the Pontryagin map.
pub fn twisted_action(model: &ManifoldModel, lo: i64, hi: i64) -> Result<HomAction, DgError> {
    let p = model.presentation();
    let der = Arc::new(der_complex(p, Some(OMEGA), lo, hi)?);
    let top = p.lie().degrees().iter().copied().max().unwrap_or(0) + 1 + hi;
    let rho = model.rho(top)?;
    let source = Source::suspended(&p.indecomposables(None)?);
    let hom = Arc::new(HomComplex::new(source, rho.pi().clone(), lo - 1, hi, false));
    HomAction::new(der, hom, None, &rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::manifold::tests::w11;
    use crate::report::all_pass;

    #[test]
    fn block_algebra_of_w11() {
        let g = build_block_g(&w11(), 4, DeruMode::SemisimpleAsserted).unwrap();
        assert_eq!(g.hom.dim(0), 2);
        assert_eq!(g.der.dim(0), 0);
        assert_eq!(g.algebra.dim(0), 2);
        assert!(all_pass(&g.verdicts));
        assert!(all_pass(&g.structure(8)));
        let t = build_tilde_g(&w11(), 4).unwrap();
        assert!(all_pass(&t.structure(8)));
        assert_eq!(g.betti(0, 3).unwrap(), t.betti(0, 3).unwrap());
    }
}
