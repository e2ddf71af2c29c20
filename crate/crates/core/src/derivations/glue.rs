//! Gluing derivations across pushouts, and the forgetful pullback.

use super::slice::{deru, DerSlice, DeruMode};
use super::Derivation;
use crate::algebra::basis::GradedBasis;
use crate::algebra::complex::{induced_rank, ChainComplexSlice};
use crate::algebra::matrix::{Matrix, Subspace};
use crate::algebra::rational::Rational;
use crate::dgla::DgLieAlgebra;
use crate::error::DgError;
use crate::freelie::tensor::Tensor;
use crate::freelie::{LieElement, Morphism, Presentation, Pushout, Rho};
use crate::report::{first_failure, Verdict};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Target generator of each source generator, for a generator inclusion.
fn letter_map(m: &Morphism) -> Vec<usize> {
    m.images()
        .iter()
        .map(|x| {
            let (k, _) = x.terms().iter().next().expect("inclusions send generators to generators");
            k.as_letter().expect("inclusions send generators to generators") as usize
        })
        .collect()
}

/// `g(θ, ψ)`: the derivation of the pushout restricting to θ on the left
/// side and ψ on the right side. Both must vanish on the shared generators.
pub fn glue_derivations(po: &Pushout, theta: &Derivation, psi: &Derivation) -> Result<Derivation, DgError> {
    if theta.degree() != psi.degree() {
        return Err(DgError::SubMismatch(format!("degrees {} and {} differ", theta.degree(), psi.degree())));
    }
    let p = &po.presentation;
    let n = theta.degree();
    let mut values: Vec<LieElement> = (0..p.ngens()).map(|i| LieElement::zero(p.lie().gen_degree(i) + n)).collect();
    for (m, side, name) in [(&po.left, theta, "left"), (&po.right, psi, "right")] {
        for (i, &j) in letter_map(m).iter().enumerate() {
            let v = side.value(i);
            if po.shared.contains(&j) {
                if !v.is_zero() {
                    return Err(DgError::SubMismatch(format!(
                        "the {name} derivation is nonzero on shared generator {}",
                        p.lie().name(j)
                    )));
                }
                continue;
            }
            values[j] = m.apply(v);
        }
    }
    Derivation::new(p.clone(), n, values)
}

/// Restricts a derivation of the pushout to one side, if it vanishes on the
/// other side's free generators. `left` selects the side.
pub fn restrict_derivation(po: &Pushout, theta: &Derivation, left: bool) -> Option<Derivation> {
    let (m, other) = if left { (&po.left, &po.right_free) } else { (&po.right, &po.left_free) };
    if other.iter().any(|&j| !theta.value(j).is_zero()) {
        return None;
    }
    let src = m.source();
    let map = letter_map(m);
    let p = &po.presentation;
    // P-letter -> source generator
    let mut back: Vec<Option<usize>> = vec![None; p.ngens()];
    for (i, &j) in map.iter().enumerate() {
        back[j] = Some(i);
    }
    let images: Vec<Arc<Tensor>> = back
        .iter()
        .map(|b| Arc::new(b.map_or_else(Tensor::zero, |i| src.lie().to_tensor(&src.lie().generator(i)))))
        .collect();
    let mut values = Vec::with_capacity(src.ngens());
    for &j in &map {
        let v = theta.value(j);
        if v.terms().keys().any(|k| k.word().iter().any(|&c| back[c as usize].is_none())) {
            return None;
        }
        let t = p.lie().substitute_tensor(&p.lie().to_tensor(v), &images);
        values.push(src.lie().from_tensor(&t, v.degree()));
    }
    Derivation::new(src.clone(), theta.degree(), values).ok()
}

/// The pullback of `Der_u(L rel A) -> Der_m(L', L) <- Der_u(L' rel A')`.
#[derive(Debug, Clone)]
pub struct ForgetPullback {
    pub left: DerSlice,
    pub right: DerSlice,
    /// Per degree, the pullback as a subspace of left ⊕ right coordinates.
    pub spaces: BTreeMap<i64, Subspace>,
    pub complex: ChainComplexSlice,
}

impl ForgetPullback {
    /// Matrix of one of the two projections in degree `n`.
    pub fn projection(&self, n: i64, left: bool) -> Matrix {
        let s = &self.spaces[&n];
        let split = self.left.dim(n);
        let rows = if left { split } else { self.right.dim(n) };
        let cols: Vec<Vec<Rational>> = s
            .basis()
            .iter()
            .map(|b| if left { b[..split].to_vec() } else { b[split..].to_vec() })
            .collect();
        Matrix::from_columns(rows, &cols)
    }
}

fn check_quasi_iso(m: &Morphism) -> Result<(), DgError> {
    let (src, tgt) = (m.source(), m.target());
    let top = src
        .lie()
        .degrees()
        .iter()
        .chain(tgt.lie().degrees())
        .copied()
        .max()
        .unwrap_or(0)
        + 1;
    let a = src.chain_slice(0, top + 1);
    let b = tgt.chain_slice(0, top + 1);
    for k in 1..=top {
        let cols: Vec<Vec<Rational>> = src
            .lie()
            .basis(k)
            .keys
            .iter()
            .map(|key| tgt.lie().coords(&m.apply(&LieElement::basis(key.clone(), k))))
            .collect();
        let map = Matrix::from_columns(tgt.lie().dim(k), &cols);
        let r = induced_rank(&a, &b, &map, k)?;
        let (ha, hb) = (a.homology_at(k)?.betti, b.homology_at(k)?.betti);
        if r != ha || r != hb {
            return Err(DgError::NotQuasiIso(format!(
                "in degree {k} the induced map has rank {r} between homology of ranks {ha} and {hb}"
            )));
        }
    }
    Ok(())
}

pub struct ForgetInput<'a> {
    pub m: &'a Morphism,
    pub rel: Option<&'a str>,
    pub rel_source: Option<&'a str>,
    pub rho: Option<&'a Rho>,
    pub rho_source: Option<&'a Rho>,
    pub max: i64,
    pub mode: DeruMode,
}

/// Pairs `(θ, θ')` with `θ∘m = m∘θ'`, inside `Der_u(L rel A) × Der_u(L' rel A')`.
pub fn forget_pullback(input: &ForgetInput<'_>) -> Result<ForgetPullback, DgError> {
    let m = input.m;
    if let Some(f) = first_failure(&m.check(None, None)) {
        return Err(DgError::InvalidMorphism(f));
    }
    check_quasi_iso(m)?;
    let (src, tgt) = (m.source(), m.target());
    let left = deru(tgt, input.rel, input.rho, input.max, input.mode)?;
    let right = deru(src, input.rel_source, input.rho_source, input.max, input.mode)?;
    let (lo, hi) = left.window();
    let mut spaces = BTreeMap::new();
    for n in lo..=hi {
        let (a, b) = (left.dim(n), right.dim(n));
        let rows: usize = (0..src.ngens()).map(|i| tgt.lie().dim(src.lie().gen_degree(i) + n)).sum();
        let mut cols = Vec::with_capacity(a + b);
        let eq = |values: Vec<LieElement>| -> Vec<Rational> {
            values.iter().flat_map(|v| if v.degree() >= 1 { tgt.lie().coords(v) } else { Vec::new() }).collect()
        };
        for theta in left.basis_derivations(n) {
            cols.push(eq(m.images().iter().map(|x| theta.eval(x)).collect()));
        }
        for psi in right.basis_derivations(n) {
            cols.push(eq(psi.values().iter().map(|x| m.apply(x).neg()).collect()));
        }
        let matrix = Matrix::from_columns(rows, &cols);
        spaces.insert(n, if a + b == 0 { Subspace::zero(0) } else { Subspace::kernel(&matrix) });
    }
    let mut basis = GradedBasis::default();
    for (n, s) in &spaces {
        for i in 0..s.dim() {
            basis.push(format!("pb{n}.{i}"), *n)?;
        }
    }
    let mut blocks = Vec::new();
    for n in lo + 1..=hi {
        let (s, t) = (&spaces[&n], &spaces[&(n - 1)]);
        if s.dim() == 0 || t.dim() == 0 {
            continue;
        }
        let split = left.dim(n);
        let cols: Vec<Vec<Rational>> = s
            .basis()
            .iter()
            .map(|v| {
                let mut d = left.differential(n, &v[..split]).expect("inside the window");
                d.extend(right.differential(n, &v[split..]).expect("inside the window"));
                t.coords(&d).expect("the product differential preserves the pullback")
            })
            .collect();
        blocks.push((n, Matrix::from_columns(t.dim(), &cols)));
    }
    let complex = ChainComplexSlice::new(lo, hi, basis, blocks);
    Ok(ForgetPullback {
        left,
        right,
        spaces,
        complex,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ForgetComparison {
    pub degrees: Vec<i64>,
    pub left_betti: Vec<usize>,
    pub pullback_betti: Vec<usize>,
    pub right_betti: Vec<usize>,
    pub left_projection_rank: Vec<usize>,
    pub right_projection_rank: Vec<usize>,
    pub verdicts: Vec<Verdict>,
}

/// Homology ranks of the three terms and of both projections in degrees
/// `0..max`. Agreement is reported, not asserted.
pub fn forget_compare(input: &ForgetInput<'_>) -> Result<ForgetComparison, DgError> {
    let pb = forget_pullback(input)?;
    let mut out = ForgetComparison {
        degrees: Vec::new(),
        left_betti: Vec::new(),
        pullback_betti: Vec::new(),
        right_betti: Vec::new(),
        left_projection_rank: Vec::new(),
        right_projection_rank: Vec::new(),
        verdicts: Vec::new(),
    };
    for k in 0..input.max {
        out.degrees.push(k);
        out.left_betti.push(pb.left.complex().homology_at(k)?.betti);
        out.right_betti.push(pb.right.complex().homology_at(k)?.betti);
        out.pullback_betti.push(pb.complex.homology_at(k)?.betti);
        out.left_projection_rank
            .push(induced_rank(&pb.complex, pb.left.complex(), &pb.projection(k, true), k)?);
        out.right_projection_rank
            .push(induced_rank(&pb.complex, pb.right.complex(), &pb.projection(k, false), k)?);
    }
    let agree = |a: &[usize], b: &[usize]| {
        let bad: Vec<String> = a
            .iter()
            .zip(b)
            .enumerate()
            .filter(|(_, (x, y))| x != y)
            .map(|(k, (x, y))| format!("degree {k}: {x} vs {y}"))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad.join("; "))
        }
    };
    out.verdicts
        .push(Verdict::from_result("left and right ranks agree", agree(&out.left_betti, &out.right_betti)));
    out.verdicts.push(Verdict::from_result(
        "pullback and left ranks agree",
        agree(&out.pullback_betti, &out.left_betti),
    ));
    Ok(out)
}

/// Checks that `g` is bracket-compatible on all pairs of basis derivations of
/// the given degrees in two slices.
pub fn check_glue_brackets(po: &Pushout, x: &DerSlice, y: &DerSlice, degrees: &[i64]) -> Result<(), String> {
    for &i in degrees {
        for &j in degrees {
            let (xi, xj) = (x.basis_derivations(i), x.basis_derivations(j));
            let (yi, yj) = (y.basis_derivations(i), y.basis_derivations(j));
            let pairs = |a: &[Derivation], p: &Arc<Presentation>, n| {
                if a.is_empty() {
                    vec![Derivation::zero(p.clone(), n)]
                } else {
                    a.to_vec()
                }
            };
            let (xi, xj) = (pairs(&xi, x.presentation(), i), pairs(&xj, x.presentation(), j));
            let (yi, yj) = (pairs(&yi, y.presentation(), i), pairs(&yj, y.presentation(), j));
            for (t, s) in xi.iter().zip(yi.iter().cycle()) {
                for (t2, s2) in xj.iter().zip(yj.iter().cycle()) {
                    let lhs = glue_derivations(po, &t.bracket(t2), &s.bracket(s2)).map_err(|e| e.to_string())?;
                    let g1 = glue_derivations(po, t, s).map_err(|e| e.to_string())?;
                    let g2 = glue_derivations(po, t2, s2).map_err(|e| e.to_string())?;
                    if lhs.values() != g1.bracket(&g2).values() {
                        return Err(format!("g is not bracket-compatible in degrees ({i}, {j})"));
                    }
                }
            }
        }
    }
    Ok(())
}
