//! End-to-end pipelines: boundary connected sums of manifold models, the
//! gluing map on block dg Lie algebras, and the forgetful comparison for
//! stabilized models.

use crate::algebra::matrix::Matrix;
use crate::algebra::rational::Rational;
use crate::algebra::complex::induced_rank;
use crate::derivations::{deru, forget_compare, glue_derivations, DeruMode, ForgetComparison, ForgetInput};
use crate::dgla::{unit, DgLieAlgebra};
use crate::error::DgError;
use crate::freelie::{pushout, Pushout};
use crate::models::{build_block_g, GAlgebra, ManifoldModel, BETA, OMEGA};
use crate::report::Verdict;
use std::collections::BTreeMap;

/// `M ♮ N` on the level of models, with the check `ω = ω_M + ω_N`.
pub fn boundary_connected_sum(m: &ManifoldModel, n: &ManifoldModel) -> Result<(ManifoldModel, Pushout, Verdict), DgError> {
    if m.dimension() != n.dimension() {
        return Err(DgError::DimensionMismatch(format!(
            "dimensions {} and {} differ",
            m.dimension(),
            n.dimension()
        )));
    }
    let po = pushout(m.presentation(), n.presentation(), None)?;
    let p = &po.presentation;
    let lie = p.lie();
    let names: Vec<String> = lie.names().to_vec();
    let space = m.space().direct_sum(n.space(), &names[m.space().dim()..])?;
    let gens: Vec<(String, i64)> = names.iter().cloned().zip(lie.degrees().iter().copied()).collect();
    let differential: Vec<(String, String)> =
        (0..p.ngens()).filter(|&i| !p.d_of(i).is_zero()).map(|i| (names[i].clone(), p.format(p.d_of(i)))).collect();
    let mut pontryagin: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
    for k in m.pontryagin().keys().chain(n.pontryagin().keys()) {
        if pontryagin.contains_key(k) {
            continue;
        }
        let part = |x: &ManifoldModel| {
            x.pontryagin()
                .get(k)
                .cloned()
                .unwrap_or_else(|| vec![num_traits::Zero::zero(); x.space().basis().dim(*k)])
        };
        let mut v = part(m);
        v.extend(part(n));
        pontryagin.insert(*k, v);
    }
    let sum = ManifoldModel::new(m.dimension(), &gens, space.pairing().clone(), &differential, pontryagin)?;
    let lhs = sum.omega().clone();
    let rhs = po.left.apply(m.omega()).add(&po.right.apply(n.omega()));
    let rhs = sum.presentation().parse(&p.format(&rhs))?;
    let verdict = if lhs == rhs {
        Verdict::pass("omega is additive")
    } else {
        Verdict::fail("omega is additive", format!("{} vs {}", sum.presentation().format(&lhs), sum.presentation().format(&rhs)))
    };
    Ok((sum, po, verdict))
}

/// The block algebras of `M`, `N`, `M ♮ N` and the comparison map
/// `g(M) × g(N) -> g(M ♮ N)`, one matrix per degree.
pub struct BlockGluing {
    pub left: GAlgebra,
    pub right: GAlgebra,
    pub sum: GAlgebra,
    pub maps: BTreeMap<i64, Matrix>,
    pub verdicts: Vec<Verdict>,
}

impl BlockGluing {
    /// Image of `(x, y)` in degree `n`.
    pub fn apply(&self, n: i64, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut v = x.to_vec();
        v.extend_from_slice(y);
        self.maps[&n].mul_vec(&v)
    }
}

fn glue_element(
    po: &Pushout,
    l: &GAlgebra,
    r: &GAlgebra,
    s: &GAlgebra,
    n: i64,
    x: &[Rational],
    y: &[Rational],
) -> Result<Vec<Rational>, DgError> {
    let (xt, xf) = x.split_at(l.der.dim(n));
    let (yt, yf) = y.split_at(r.der.dim(n));
    let theta = glue_derivations(po, &l.der.derivation(n, xt), &r.der.derivation(n, yt))?;
    let mut out = s
        .der
        .coords(&theta)
        .ok_or_else(|| DgError::SubMismatch(format!("the glued derivation of degree {n} leaves the unipotent part")))?;
    let mut raw = l.hom.raw(n, xf);
    raw.extend(r.hom.raw(n, yf));
    let f = s
        .hom
        .from_raw(n, &raw)
        .ok_or_else(|| DgError::SubMismatch(format!("the glued Hom element of degree {n} leaves the truncation")))?;
    out.extend(f);
    Ok(out)
}

/// Builds the three block algebras on `-1..=max` and the gluing map,
/// verifying it is a map of dg Lie algebras on sampled basis pairs.
pub fn glue_headline_g(
    m: &ManifoldModel,
    n: &ManifoldModel,
    max: i64,
    mode: DeruMode,
    assert_semisimple: bool,
) -> Result<BlockGluing, DgError> {
    if !assert_semisimple {
        return Err(DgError::SemisimplicityNotAsserted);
    }
    let (sum_model, po, omega) = boundary_connected_sum(m, n)?;
    let left = build_block_g(m, max, mode)?;
    let right = build_block_g(n, max, mode)?;
    let sum = build_block_g(&sum_model, max, mode)?;
    // Π must agree on the Hom factors: use the degree range of the sum.
    let mut maps = BTreeMap::new();
    for k in -1..=max {
        let (a, b) = (left.algebra.dim(k), right.algebra.dim(k));
        let mut cols = Vec::with_capacity(a + b);
        for i in 0..a {
            cols.push(glue_element(&po, &left, &right, &sum, k, &unit(a, i), &vec![Rational::default(); b])?);
        }
        for i in 0..b {
            cols.push(glue_element(&po, &left, &right, &sum, k, &vec![Rational::default(); a], &unit(b, i))?);
        }
        maps.insert(k, Matrix::from_columns(sum.algebra.dim(k), &cols));
    }
    let mut out = BlockGluing {
        left,
        right,
        sum,
        maps,
        verdicts: vec![omega],
    };
    out.verdicts.extend(check_gluing_map(&out, max, 6));
    Ok(out)
}

fn check_gluing_map(g: &BlockGluing, max: i64, limit: usize) -> Vec<Verdict> {
    let mut elems = Vec::new();
    for k in -1..=max {
        let (a, b) = (g.left.algebra.dim(k), g.right.algebra.dim(k));
        for i in 0..(a + b).min(limit) {
            let v = unit(a + b, i);
            let (x, y) = v.split_at(a);
            elems.push((k, x.to_vec(), y.to_vec()));
        }
    }
    let mut d_bad = None;
    for (k, x, y) in &elems {
        let (Some(dx), Some(dy)) = (g.left.algebra.differential(*k, x), g.right.algebra.differential(*k, y)) else { continue };
        if !g.maps.contains_key(&(k - 1)) {
            continue;
        }
        let lhs = g.apply(k - 1, &dx, &dy);
        let rhs = g.sum.algebra.differential(*k, &g.apply(*k, x, y));
        if Some(lhs) != rhs {
            d_bad = Some(format!("degree {k}"));
            break;
        }
    }
    let mut b_bad = None;
    'outer: for (i, x, y) in &elems {
        for (j, u, v) in &elems {
            if !g.maps.contains_key(&(i + j)) {
                continue;
            }
            let (Some(xu), Some(yv)) = (g.left.algebra.bracket(*i, x, *j, u), g.right.algebra.bracket(*i, y, *j, v)) else { continue };
            let lhs = g.apply(i + j, &xu, &yv);
            let rhs = g.sum.algebra.bracket(*i, &g.apply(*i, x, y), *j, &g.apply(*j, u, v));
            if Some(lhs) != rhs {
                b_bad = Some(format!("degrees ({i}, {j})"));
                break 'outer;
            }
        }
    }
    vec![
        Verdict::from_result("gluing map commutes with d", d_bad.map_or(Ok(()), Err)),
        Verdict::from_result("gluing map preserves brackets", b_bad.map_or(Ok(()), Err)),
    ]
}

/// Homology ranks of `Der_u(L rel ω) <- pullback -> Der_u(L̃ rel β)` along
/// the projection `L̃ -> L`, in degrees `0..max`.
pub fn forget_tilde(model: &ManifoldModel, max: i64) -> Result<ForgetComparison, DgError> {
    let t = model.tilde()?;
    let top = t.presentation.lie().degrees().iter().copied().max().unwrap_or(0);
    let rho = model.rho(top)?;
    let rho_t = model.rho_on(&t.presentation, top)?;
    forget_compare(&ForgetInput {
        m: &t.projection,
        rel: Some(OMEGA),
        rel_source: Some(BETA),
        rho: Some(&rho),
        rho_source: Some(&rho_t),
        max,
        mode: DeruMode::SemisimpleAsserted,
    })
}

/// Homology of `Der_u(L rel ω)` and `Der_u(L̃ rel β)` and the rank of the map
/// induced by Ξ, in degrees `0..max`.
#[derive(Debug, Clone)]
pub struct XiComparison {
    pub degrees: Vec<i64>,
    pub left_betti: Vec<usize>,
    pub right_betti: Vec<usize>,
    pub xi_rank: Vec<usize>,
    pub verdicts: Vec<Verdict>,
}

pub fn xi_comparison(model: &ManifoldModel, max: i64, mode: DeruMode) -> Result<XiComparison, DgError> {
    let t = model.tilde()?;
    let top = t.presentation.lie().degrees().iter().copied().max().unwrap_or(0);
    let rho = model.rho(top)?;
    let rho_t = model.rho_on(&t.presentation, top)?;
    let left = deru(model.presentation(), Some(OMEGA), Some(&rho), max, mode)?;
    let right = deru(&t.presentation, Some(BETA), Some(&rho_t), max, mode)?;
    let degrees: Vec<i64> = (0..max).collect();
    let (mut left_betti, mut right_betti, mut xi_rank) = (Vec::new(), Vec::new(), Vec::new());
    let mut image_ok = Ok(());
    for &k in &degrees {
        let mut cols = Vec::new();
        for theta in left.basis_derivations(k) {
            match right.coords(&t.xi(&theta)) {
                Some(c) => cols.push(c),
                None => {
                    image_ok = Err(format!("the extension of a degree-{k} basis derivation leaves the target"));
                    cols.push(vec![Rational::default(); right.dim(k)]);
                }
            }
        }
        let map = Matrix::from_columns(right.dim(k), &cols);
        left_betti.push(left.complex().homology_at(k)?.betti);
        right_betti.push(right.complex().homology_at(k)?.betti);
        xi_rank.push(induced_rank(left.complex(), right.complex(), &map, k)?);
    }
    let agree = |a: &[usize], b: &[usize]| match (0..a.len()).find(|&i| a[i] != b[i]) {
        None => Ok(()),
        Some(i) => Err(format!("degree {}: {} vs {}", degrees[i], a[i], b[i])),
    };
    let verdicts = vec![
        Verdict::from_result("xi lands in the unipotent derivations", image_ok),
        Verdict::from_result("homology ranks agree", agree(&left_betti, &right_betti)),
        Verdict::from_result("xi is injective on homology", agree(&xi_rank, &left_betti)),
        Verdict::from_result("xi is surjective on homology", agree(&xi_rank, &right_betti)),
    ];
    Ok(XiComparison {
        degrees,
        left_betti,
        right_betti,
        xi_rank,
        verdicts,
    })
}
