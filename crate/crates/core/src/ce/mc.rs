//! Maurer–Cartan elements, the twisted gauge action, and homotopies of maps
//! into `L ⊗ Ω₁` where `Ω₁ = Q[t] ⊕ Q[t]dt`.

use crate::algebra::rational::{is_zero_vec, odd, qf, Rational};
use crate::dgla::{add_scaled, DgLieAlgebra};
use crate::error::DgError;
use crate::freelie::expr::Tree;
use crate::freelie::{FreeLie, LieElement, Morphism, Presentation};
use crate::models::OuterAction;
use crate::report::Verdict;
use num_traits::One;
use std::collections::BTreeMap;

/// `dτ + ½[τ,τ]` for τ of degree -1; τ is Maurer–Cartan iff this is zero.
pub fn mc_check(g: &dyn DgLieAlgebra, tau: &[Rational]) -> Result<(bool, Vec<Rational>), DgError> {
    let (d, b) = (g.differential(-1, tau), g.bracket(-1, tau, -1, tau));
    let (Some(mut r), Some(b)) = (d, b) else {
        let (lo, hi) = g.window();
        return Err(crate::algebra::complex::ComplexError::WindowTooNarrow {
            degree: -1,
            missing: -2,
            min: lo,
            max: hi,
        }
        .into());
    };
    add_scaled(&mut r, &b, &qf(1, 2));
    Ok((is_zero_vec(&r), r))
}

/// `x + Σ_{n≥0} (θ·)^n(θ·x - χ(θ)) / (n+1)!` for a degree-0 cycle θ of the
/// acting algebra and x of degree -1 in the module.
pub fn gauge_action(a: &dyn OuterAction, theta: &[Rational], x: &[Rational]) -> Result<Vec<Rational>, DgError> {
    let g = a.acting();
    let l = a.module();
    let dtheta = g.differential(0, theta).unwrap_or_default();
    if !is_zero_vec(&dtheta) {
        return Err(DgError::NotACycle("the gauge parameter has nonzero differential".into()));
    }
    let window = |_| DgError::Invalid("degree -1 of the module is not known".into());
    let tx = a.act(0, theta, -1, x).ok_or(()).map_err(window)?;
    let chi = a.chi(0, theta).ok_or(()).map_err(window)?;
    let mut term: Vec<Rational> = tx.iter().zip(&chi).map(|(p, q)| p - q).collect();
    let mut out = x.to_vec();
    let bound = l.dim(-1) + 1;
    let mut factorial = Rational::one();
    for n in 0..=bound {
        if is_zero_vec(&term) {
            return Ok(out);
        }
        factorial *= Rational::from_integer(((n + 1) as i64).into());
        add_scaled(&mut out, &term, &(Rational::one() / &factorial));
        term = a.act(0, theta, -1, &term).expect("degree -1 is known");
    }
    Err(DgError::NotNilpotent("the gauge parameter does not act nilpotently".into()))
}

/// An element `Σ a_k t^k + Σ b_k t^k dt` of `L ⊗ Ω₁` of degree `degree`;
/// the `a_k` have that degree and the `b_k` one more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalElement {
    pub degree: i64,
    pub a: BTreeMap<usize, LieElement>,
    pub b: BTreeMap<usize, LieElement>,
}

fn add_into(map: &mut BTreeMap<usize, LieElement>, k: usize, x: LieElement) {
    if x.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(y) => {
            y.add_scaled(&x, &Rational::one());
            if y.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, x);
        }
    }
}

impl IntervalElement {
    pub fn zero(degree: i64) -> IntervalElement {
        IntervalElement {
            degree,
            a: BTreeMap::new(),
            b: BTreeMap::new(),
        }
    }

    /// `x ⊗ 1`.
    pub fn constant(x: &LieElement) -> IntervalElement {
        let mut out = IntervalElement::zero(x.degree());
        add_into(&mut out.a, 0, x.clone());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    pub fn add(&self, other: &IntervalElement) -> IntervalElement {
        let mut out = self.clone();
        for (k, x) in &other.a {
            add_into(&mut out.a, *k, x.clone());
        }
        for (k, x) in &other.b {
            add_into(&mut out.b, *k, x.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> IntervalElement {
        let mut out = IntervalElement::zero(self.degree);
        for (k, x) in &self.a {
            add_into(&mut out.a, *k, x.scale(c));
        }
        for (k, x) in &self.b {
            add_into(&mut out.b, *k, x.scale(c));
        }
        out
    }

    /// `[x⊗ω, y⊗η] = (-1)^{|ω||y|} [x,y] ⊗ ωη`.
    pub fn bracket(&self, lie: &FreeLie, other: &IntervalElement) -> IntervalElement {
        let mut out = IntervalElement::zero(self.degree + other.degree);
        for (i, x) in &self.a {
            for (j, y) in &other.a {
                add_into(&mut out.a, i + j, lie.bracket(x, y));
            }
            for (j, y) in &other.b {
                add_into(&mut out.b, i + j, lie.bracket(x, y));
            }
        }
        for (i, x) in &self.b {
            for (j, y) in &other.a {
                let v = lie.bracket(x, y);
                add_into(&mut out.b, i + j, if odd(other.degree) { v.neg() } else { v });
            }
        }
        out
    }

    /// `d(x⊗ω) = dx⊗ω + (-1)^{|x|} x⊗dω`, with `d(t^k) = k t^{k-1} dt`.
    pub fn differential(&self, p: &Presentation) -> IntervalElement {
        let mut out = IntervalElement::zero(self.degree - 1);
        for (k, x) in &self.a {
            add_into(&mut out.a, *k, p.d(x));
            if *k > 0 {
                let c = Rational::from_integer((*k as i64).into());
                let c = if odd(self.degree) { -c } else { c };
                add_into(&mut out.b, k - 1, x.scale(&c));
            }
        }
        for (k, x) in &self.b {
            add_into(&mut out.b, *k, p.d(x));
        }
        out
    }

    /// Evaluation at `t = 0`.
    pub fn at_zero(&self) -> LieElement {
        self.a.get(&0).cloned().unwrap_or_else(|| LieElement::zero(self.degree))
    }

    /// Evaluation at `t = 1`.
    pub fn at_one(&self) -> LieElement {
        let mut out = LieElement::zero(self.degree);
        for x in self.a.values() {
            out.add_scaled(x, &Rational::one());
        }
        out
    }
}

/// A map `L' -> L ⊗ Ω₁` given on generators.
#[derive(Debug, Clone)]
pub struct Homotopy {
    pub source: std::sync::Arc<Presentation>,
    pub target: std::sync::Arc<Presentation>,
    pub values: Vec<IntervalElement>,
}

impl Homotopy {
    fn eval_tree(&self, t: &Tree) -> IntervalElement {
        match t {
            Tree::Ident { name, .. } => {
                let i = self.source.lie().position(name).expect("tree over the source generators");
                self.values[i].clone()
            }
            Tree::Bracket(x, y) => {
                let (x, y) = (self.eval_tree(x), self.eval_tree(y));
                x.bracket(self.target.lie(), &y)
            }
        }
    }

    /// The Lie extension of the generator values.
    pub fn apply(&self, x: &LieElement) -> IntervalElement {
        let lie = self.source.lie();
        let mut out = IntervalElement::zero(x.degree());
        for (k, c) in x.terms() {
            out = out.add(&self.eval_tree(&lie.key_tree(k)).scale(c));
        }
        out
    }
}

/// Checks that `h` is a dg Lie map into `L ⊗ Ω₁` with `h|_{t=0} = f`,
/// `h|_{t=1} = g`, constant on the generators of `rel`.
pub fn homotopy_check(h: &Homotopy, f: &Morphism, g: &Morphism, rel: Option<&str>) -> Result<Vec<Verdict>, DgError> {
    let src = &h.source;
    let lie = src.lie();
    let mut out = Vec::new();
    let mut bad = None;
    for (i, v) in h.values.iter().enumerate() {
        if v.degree != lie.gen_degree(i) {
            bad = Some(format!("h({}) has degree {}", lie.name(i), v.degree));
            break;
        }
    }
    out.push(Verdict::from_result("h has degree 0", bad.map_or(Ok(()), Err)));
    let mut bad = None;
    for i in 0..src.ngens() {
        let lhs = h.values[i].differential(&h.target);
        let rhs = h.apply(src.d_of(i));
        if lhs != rhs {
            bad = Some(format!("d(h({0})) differs from h(d({0}))", lie.name(i)));
            break;
        }
    }
    out.push(Verdict::from_result("h commutes with d", bad.map_or(Ok(()), Err)));
    let ends: [(&str, &Morphism, fn(&IntervalElement) -> LieElement); 2] =
        [("h at t=0 is f", f, IntervalElement::at_zero), ("h at t=1 is g", g, IntervalElement::at_one)];
    for (name, map, at) in ends {
        let bad = (0..src.ngens()).find(|&i| at(&h.values[i]) != *map.image(i)).map(|i| {
            format!(
                "{}: {} vs {}",
                lie.name(i),
                h.target.format(&at(&h.values[i])),
                h.target.format(map.image(i))
            )
        });
        out.push(Verdict::from_result(name, bad.map_or(Ok(()), Err)));
    }
    if let Some(name) = rel {
        let gens = src.sub_generators(name)?;
        let bad = gens
            .iter()
            .find(|&&i| h.values[i] != IntervalElement::constant(f.image(i)))
            .map(|&i| format!("h({}) is not constant", lie.name(i)));
        out.push(Verdict::from_result("h is constant on the sub", bad.map_or(Ok(()), Err)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;
    use std::sync::Arc;

    #[test]
    fn homotopy_between_chain_homotopic_maps() {
        let src = Arc::new(Presentation::builder().generator("x", 2).build().unwrap());
        let tgt = Arc::new(Presentation::builder().generator("y", 2).generator("z", 3).differential("z", "y").build().unwrap());
        let f = Morphism::from_exprs(src.clone(), tgt.clone(), &[("x".into(), "y".into())]).unwrap();
        let g = Morphism::from_exprs(src.clone(), tgt.clone(), &[]).unwrap();
        let y = tgt.parse("y").unwrap();
        let z = tgt.parse("z").unwrap();
        let mut v = IntervalElement::zero(2);
        add_into(&mut v.a, 0, y.clone());
        add_into(&mut v.a, 1, y.neg());
        add_into(&mut v.b, 0, z);
        let h = Homotopy {
            source: src.clone(),
            target: tgt.clone(),
            values: vec![v.clone()],
        };
        assert!(all_pass(&homotopy_check(&h, &f, &g, None).unwrap()));
        let bad = homotopy_check(&h, &f, &f, None).unwrap();
        assert!(!bad[3].pass);
        let constant = Homotopy {
            source: src,
            target: tgt,
            values: vec![IntervalElement::constant(&y)],
        };
        assert!(all_pass(&homotopy_check(&constant, &f, &f, None).unwrap()));
    }
}
