//! Baker–Campbell–Hausdorff products in nilpotent Lie algebras.

use crate::algebra::rational::{is_zero_vec, qf, Rational};
use crate::derivations::Derivation;
use crate::dgla::{unit, DgLieAlgebra};
use crate::error::DgError;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A Lie algebra over Q in which BCH is evaluated.
pub trait LieOps {
    type E: Clone;

    fn bracket(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn scale(&self, x: &Self::E, c: &Rational) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;

    fn describe(&self, _x: &Self::E) -> String {
        "nonzero".into()
    }
}

/// Degree 0 of a dg Lie algebra, in coordinates.
pub struct DegreeZero<'a>(pub &'a dyn DgLieAlgebra);

impl LieOps for DegreeZero<'_> {
    type E = Vec<Rational>;

    fn bracket(&self, x: &Vec<Rational>, y: &Vec<Rational>) -> Vec<Rational> {
        self.0.bracket(0, x, 0, y).expect("degree 0 is known")
    }

    fn add(&self, x: &Vec<Rational>, y: &Vec<Rational>) -> Vec<Rational> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    fn scale(&self, x: &Vec<Rational>, c: &Rational) -> Vec<Rational> {
        x.iter().map(|a| a * c).collect()
    }

    fn is_zero(&self, x: &Vec<Rational>) -> bool {
        is_zero_vec(x)
    }

    fn describe(&self, x: &Vec<Rational>) -> String {
        crate::algebra::rational::DisplayVec(x).to_string()
    }
}

/// Derivations of one degree-0 family, under the commutator.
pub struct Derivations;

impl LieOps for Derivations {
    type E = Derivation;

    fn bracket(&self, x: &Derivation, y: &Derivation) -> Derivation {
        x.bracket(y)
    }

    fn add(&self, x: &Derivation, y: &Derivation) -> Derivation {
        x.add(y)
    }

    fn scale(&self, x: &Derivation, c: &Rational) -> Derivation {
        x.scale(c)
    }

    fn is_zero(&self, x: &Derivation) -> bool {
        x.is_zero()
    }
}

/// All right-nested brackets `[z_1, [z_2, … z_k]]` with `z_i ∈ gens`.
fn right_nested<O: LieOps>(ops: &O, gens: &[O::E], k: usize) -> Vec<(Vec<usize>, O::E)> {
    let mut level: Vec<(Vec<usize>, O::E)> = gens.iter().cloned().enumerate().map(|(i, x)| (vec![i], x)).collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            for (w, x) in &level {
                let b = ops.bracket(g, x);
                if !ops.is_zero(&b) {
                    let mut w2 = vec![i];
                    w2.extend(w);
                    next.push((w2, b));
                }
            }
        }
        level = next;
    }
    level
}

/// Verifies that the Lie algebra generated by `gens` has nilpotency class at
/// most `class`: every bracket of `class + 1` generators vanishes.
pub fn check_class<O: LieOps>(ops: &O, gens: &[O::E], class: usize) -> Result<(), DgError> {
    if let Some((w, x)) = right_nested(ops, gens, class + 1).into_iter().find(|(_, x)| !ops.is_zero(x)) {
        return Err(DgError::ClassExceeded {
            class,
            witness: format!("the bracket of generators {w:?} is {}", ops.describe(&x)),
        });
    }
    Ok(())
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |a, k| a * Rational::from_integer((k as i64).into()))
}

/// Coefficient of the right-nested word `w` (false = X, true = Y) in
/// Dynkin's formula for `log(e^X e^Y)`.
fn dynkin_coefficient(w: &[bool]) -> Rational {
    let len = w.len();
    // dp[i][n]: sum over splittings of w[..i] into n blocks X^r Y^s of 1/Π r!s!
    let mut dp: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); len + 1];
    dp[0].insert(0, Rational::one());
    for i in 0..len {
        let current: Vec<(usize, Rational)> = dp[i].iter().map(|(n, c)| (*n, c.clone())).collect();
        if current.is_empty() {
            continue;
        }
        let xs = w[i..].iter().take_while(|&&b| !b).count();
        for r in 0..=xs {
            let ys = w[i + r..].iter().take_while(|&&b| b).count();
            for s in 0..=ys {
                if r + s == 0 {
                    continue;
                }
                let f = factorial(r) * factorial(s);
                for (n, c) in &current {
                    *dp[i + r + s].entry(n + 1).or_insert_with(Rational::zero) += c / &f;
                }
            }
        }
    }
    let mut total = Rational::zero();
    for (n, c) in &dp[len] {
        let sign = if n % 2 == 1 { Rational::one() } else { -Rational::one() };
        total += sign * c / Rational::from_integer((*n as i64).into());
    }
    total / Rational::from_integer((len as i64).into())
}

fn nested<O: LieOps>(ops: &O, w: &[bool], x: &O::E, y: &O::E) -> O::E {
    let pick = |b: bool| if b { y.clone() } else { x.clone() };
    let mut acc = pick(w[w.len() - 1]);
    for &b in w[..w.len() - 1].iter().rev() {
        acc = ops.bracket(&pick(b), &acc);
    }
    acc
}

/// The weight-`k` part of `log(e^X e^Y)` by Dynkin's formula.
pub fn dynkin_term<O: LieOps>(ops: &O, x: &O::E, y: &O::E, k: usize) -> O::E {
    let mut acc = ops.scale(x, &Rational::zero());
    for bits in 0..(1u64 << k) {
        let w: Vec<bool> = (0..k).map(|i| bits >> (k - 1 - i) & 1 == 1).collect();
        let c = dynkin_coefficient(&w);
        if c.is_zero() {
            continue;
        }
        let t = nested(ops, &w, x, y);
        acc = ops.add(&acc, &ops.scale(&t, &c));
    }
    acc
}

/// The weight-`k` part of BCH: closed forms through weight 4, Dynkin beyond.
pub fn bch_term<O: LieOps>(ops: &O, x: &O::E, y: &O::E, k: usize) -> O::E {
    let xy = || ops.bracket(x, y);
    match k {
        1 => ops.add(x, y),
        2 => ops.scale(&xy(), &qf(1, 2)),
        3 => {
            let b = xy();
            ops.add(&ops.scale(&ops.bracket(x, &b), &qf(1, 12)), &ops.scale(&ops.bracket(y, &b), &qf(-1, 12)))
        }
        4 => {
            let b = ops.bracket(x, &xy());
            ops.scale(&ops.bracket(y, &b), &qf(-1, 24))
        }
        _ => dynkin_term(ops, x, y, k),
    }
}

/// `x·y = log(e^x e^y)` in a Lie algebra where brackets of `class + 1`
/// elements among `x, y` vanish; checked first.
pub fn bch<O: LieOps>(ops: &O, x: &O::E, y: &O::E, class: usize) -> Result<O::E, DgError> {
    check_class(ops, &[x.clone(), y.clone()], class)?;
    let mut acc = bch_term(ops, x, y, 1);
    for k in 2..=class {
        acc = ops.add(&acc, &bch_term(ops, x, y, k));
    }
    Ok(acc)
}

/// The degree-0 part of a dg Lie algebra with the BCH product, certified
/// nilpotent of the stated class on a basis.
pub struct NilpotentGroup<'a> {
    ops: DegreeZero<'a>,
    class: usize,
}

impl<'a> NilpotentGroup<'a> {
    pub fn new(g: &'a dyn DgLieAlgebra, class: usize) -> Result<NilpotentGroup<'a>, DgError> {
        let ops = DegreeZero(g);
        let n = g.dim(0);
        let basis: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
        check_class(&ops, &basis, class)?;
        Ok(NilpotentGroup { ops, class })
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let (x, y) = (x.to_vec(), y.to_vec());
        let mut acc = bch_term(&self.ops, &x, &y, 1);
        for k in 2..=self.class {
            acc = self.ops.add(&acc, &bch_term(&self.ops, &x, &y, k));
        }
        acc
    }

    pub fn inverse(&self, x: &[Rational]) -> Vec<Rational> {
        x.iter().map(|a| -a).collect()
    }
}
