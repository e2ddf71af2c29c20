//! Outer actions of one dg Lie algebra on another, and the twisted
//! semidirect product they define.

use crate::algebra::rational::{is_zero_vec, odd, DisplayVec, Rational};
use crate::dgla::{add_scaled, neg, sum, unit, DgLieAlgebra, SharedDgla};
use crate::report::Verdict;
use num_traits::One;
use std::sync::Arc;

/// The data `θ·x` and `χ(θ)` of an outer action of `acting` on `module`, in
/// coordinates. Both return `None` outside the known degrees.
pub trait OuterAction: Send + Sync {
    fn acting(&self) -> &SharedDgla;

    fn module(&self) -> &SharedDgla;

    fn act(&self, i: i64, theta: &[Rational], j: i64, x: &[Rational]) -> Option<Vec<Rational>>;

    fn chi(&self, i: i64, theta: &[Rational]) -> Option<Vec<Rational>>;
}

/// `x·θ = -(-1)^{|x||θ|} θ·x`.
pub fn act_right(a: &dyn OuterAction, j: i64, x: &[Rational], i: i64, theta: &[Rational]) -> Option<Vec<Rational>> {
    let v = a.act(i, theta, j, x)?;
    Some(if odd(i * j) { v } else { neg(&v) })
}

fn sign(k: i64) -> Rational {
    if odd(k) {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn elements(g: &dyn DgLieAlgebra, lo: i64, hi: i64) -> Vec<(i64, Vec<Rational>, String)> {
    let mut out = Vec::new();
    for k in lo..=hi {
        if !g.knows(k) {
            continue;
        }
        let n = g.dim(k);
        for i in 0..n {
            out.push((k, unit(n, i), g.basis_name(k, i)));
        }
    }
    out
}

/// Checks on basis elements in degrees `lo..=hi` of both algebras:
/// α is bracket-compatible and acts by derivations, χ is a chain map of
/// degree -1, and the two outer-action equations
/// `χ[θ,ψ] = χ(θ)·ψ + (-1)^{|θ|} θ·χ(ψ)` and
/// `d(θ·a) = dθ·a + (-1)^{|θ|} θ·da + [χ(θ), a]`.
/// At most `limit` tuples are visited for each check.
pub fn outer_action_check(a: &dyn OuterAction, lo: i64, hi: i64, limit: usize) -> Vec<Verdict> {
    let g = a.acting().as_ref();
    let l = a.module().as_ref();
    let ge = elements(g, lo, hi);
    let le = elements(l, lo, hi);
    let mut out = Vec::new();

    let mut failure = None;
    'outer: for (i, t, tn) in ge.iter().take(limit) {
        for (j, p, pn) in ge.iter().take(limit) {
            let Some(tp) = g.bracket(*i, t, *j, p) else { continue };
            for (k, x, xn) in le.iter().take(limit) {
                let (Some(lhs), Some(px), Some(tx)) = (a.act(i + j, &tp, *k, x), a.act(*j, p, *k, x), a.act(*i, t, *k, x)) else {
                    continue;
                };
                let (Some(tpx), Some(ptx)) = (a.act(*i, t, j + k, &px), a.act(*j, p, i + k, &tx)) else { continue };
                let mut rhs = tpx;
                add_scaled(&mut rhs, &ptx, &-sign(i * j));
                if lhs != rhs {
                    failure = Some(format!("[{tn}, {pn}] acting on {xn}: {} vs {}", DisplayVec(&lhs), DisplayVec(&rhs)));
                    break 'outer;
                }
            }
        }
    }
    out.push(verdict("alpha preserves brackets", failure));

    let mut failure = None;
    'outer: for (i, t, tn) in ge.iter().take(limit) {
        for (j, x, xn) in le.iter().take(limit) {
            for (k, y, yn) in le.iter().take(limit) {
                let Some(xy) = l.bracket(*j, x, *k, y) else { continue };
                let (Some(lhs), Some(tx), Some(ty)) = (a.act(*i, t, j + k, &xy), a.act(*i, t, *j, x), a.act(*i, t, *k, y)) else {
                    continue;
                };
                let (Some(u), Some(w)) = (l.bracket(i + j, &tx, *k, y), l.bracket(*j, x, i + k, &ty)) else { continue };
                let mut rhs = u;
                add_scaled(&mut rhs, &w, &sign(i * j));
                if lhs != rhs {
                    failure = Some(format!("{tn} on [{xn}, {yn}]"));
                    break 'outer;
                }
            }
        }
    }
    out.push(verdict("alpha acts by derivations", failure));

    let mut failure = None;
    for (i, t, tn) in ge.iter().take(limit) {
        let (Some(c), Some(dt)) = (a.chi(*i, t), g.differential(*i, t)) else { continue };
        let (Some(dc), Some(cd)) = (l.differential(i - 1, &c), a.chi(i - 1, &dt)) else { continue };
        if !is_zero_vec(&sum(&dc, &cd)) {
            failure = Some(format!("d(chi({tn})) + chi(d({tn})) = {}", DisplayVec(&sum(&dc, &cd))));
            break;
        }
    }
    out.push(verdict("chi is a chain map", failure));

    let mut failure = None;
    'outer: for (i, t, tn) in ge.iter().take(limit) {
        for (j, p, pn) in ge.iter().take(limit) {
            let Some(tp) = g.bracket(*i, t, *j, p) else { continue };
            let (Some(lhs), Some(ct), Some(cp)) = (a.chi(i + j, &tp), a.chi(*i, t), a.chi(*j, p)) else { continue };
            let (Some(u), Some(w)) = (act_right(a, i - 1, &ct, *j, p), a.act(*i, t, j - 1, &cp)) else { continue };
            let mut rhs = u;
            add_scaled(&mut rhs, &w, &sign(*i));
            if lhs != rhs {
                failure = Some(format!("chi([{tn}, {pn}]): {} vs {}", DisplayVec(&lhs), DisplayVec(&rhs)));
                break 'outer;
            }
        }
    }
    out.push(verdict("chi of brackets", failure));

    let mut failure = None;
    'outer: for (i, t, tn) in ge.iter().take(limit) {
        for (j, x, xn) in le.iter().take(limit) {
            let Some(tx) = a.act(*i, t, *j, x) else { continue };
            let Some(lhs) = l.differential(i + j, &tx) else { continue };
            let (Some(dt), Some(dx), Some(ct)) = (g.differential(*i, t), l.differential(*j, x), a.chi(*i, t)) else {
                continue;
            };
            let (Some(u), Some(v), Some(w)) = (a.act(i - 1, &dt, *j, x), a.act(*i, t, j - 1, &dx), l.bracket(i - 1, &ct, *j, x)) else {
                continue;
            };
            let mut rhs = sum(&u, &w);
            add_scaled(&mut rhs, &v, &sign(*i));
            if lhs != rhs {
                failure = Some(format!("d({tn} . {xn}): {} vs {}", DisplayVec(&lhs), DisplayVec(&rhs)));
                break 'outer;
            }
        }
    }
    out.push(verdict("differential of the action", failure));
    out
}

fn verdict(check: &str, failure: Option<String>) -> Verdict {
    match failure {
        None => Verdict::pass(check),
        Some(w) => Verdict::fail(check, w),
    }
}

/// `g ⋉_χ L`: coordinates are those of `g` followed by those of `L`.
#[derive(Clone)]
pub struct Semidirect {
    action: Arc<dyn OuterAction>,
}

impl Semidirect {
    pub fn new(action: Arc<dyn OuterAction>) -> Semidirect {
        Semidirect { action }
    }

    pub fn action(&self) -> &Arc<dyn OuterAction> {
        &self.action
    }

    pub fn acting(&self) -> &SharedDgla {
        self.action.acting()
    }

    pub fn module(&self) -> &SharedDgla {
        self.action.module()
    }

    pub fn split<'a>(&self, degree: i64, v: &'a [Rational]) -> (&'a [Rational], &'a [Rational]) {
        v.split_at(self.acting().dim(degree))
    }

    pub fn join(theta: &[Rational], x: &[Rational]) -> Vec<Rational> {
        let mut v = theta.to_vec();
        v.extend_from_slice(x);
        v
    }
}

impl DgLieAlgebra for Semidirect {
    fn window(&self) -> (i64, i64) {
        let (a, b) = self.acting().window();
        let (c, d) = self.module().window();
        (a.max(c), b.min(d))
    }

    fn knows(&self, degree: i64) -> bool {
        self.acting().knows(degree) && self.module().knows(degree)
    }

    fn dim(&self, degree: i64) -> usize {
        self.acting().dim(degree) + self.module().dim(degree)
    }

    fn differential(&self, degree: i64, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.knows(degree - 1) {
            return None;
        }
        let (t, x) = self.split(degree, v);
        let dt = self.acting().differential(degree, t)?;
        let dx = sum(&self.module().differential(degree, x)?, &self.action.chi(degree, t)?);
        Some(Semidirect::join(&dt, &dx))
    }

    fn bracket(&self, i: i64, u: &[Rational], j: i64, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.knows(i + j) {
            return None;
        }
        let (t, x) = self.split(i, u);
        let (p, y) = self.split(j, v);
        let tp = self.acting().bracket(i, t, j, p)?;
        let mut z = self.module().bracket(i, x, j, y)?;
        add_scaled(&mut z, &self.action.act(i, t, j, y)?, &Rational::one());
        add_scaled(&mut z, &act_right(self.action.as_ref(), i, x, j, p)?, &Rational::one());
        Some(Semidirect::join(&tp, &z))
    }

    fn basis_name(&self, degree: i64, i: usize) -> String {
        let n = self.acting().dim(degree);
        if i < n {
            self.acting().basis_name(degree, i)
        } else {
            self.module().basis_name(degree, i - n)
        }
    }
}

/// The outer action of any dg Lie algebra on itself by `ad`, with χ = 0.
pub struct Adjoint(pub SharedDgla);

impl OuterAction for Adjoint {
    fn acting(&self) -> &SharedDgla {
        &self.0
    }

    fn module(&self) -> &SharedDgla {
        &self.0
    }

    fn act(&self, i: i64, theta: &[Rational], j: i64, x: &[Rational]) -> Option<Vec<Rational>> {
        self.0.bracket(i, theta, j, x)
    }

    fn chi(&self, i: i64, _theta: &[Rational]) -> Option<Vec<Rational>> {
        self.0.knows(i - 1).then(|| vec![num_traits::Zero::zero(); self.0.dim(i - 1)])
    }
}
