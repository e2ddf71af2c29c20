mod common;

use common::*;
use dglie::algebra::matrix::{Matrix, Subspace};
use dglie::algebra::rational::{format_rational, parse_rational, Rational};
use dglie::ce::bch::Derivations;
use dglie::ce::{bch, check_class, NilpotentGroup};
use dglie::derivations::Derivation;
use dglie::dgla::{heisenberg, DgLieAlgebra};
use dglie::freelie::expr;
use dglie::freelie::{LieElement, Morphism, Presentation};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use std::sync::Arc;

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn seeded_presentation(seed: u64) -> (rand_chacha::ChaCha8Rng, Arc<Presentation>) {
    let mut rng = rng(seed);
    let p = random_presentation(&mut rng, 4, 4);
    (rng, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(x in rational()) {
        let text = format_rational(&x);
        prop_assert_eq!(parse_rational(&text).unwrap(), x);
    }

    #[test]
    fn rational_text_is_canonical(n in -1000i64..1000, d in 1i64..1000) {
        let x = qf(n, d);
        let text = format_rational(&x);
        prop_assert_eq!(format_rational(&parse_rational(&text).unwrap()), text.clone());
        prop_assert!(!text.contains('.'));
        if x.is_integer() {
            prop_assert!(!text.contains('/'));
        }
    }

    #[test]
    fn elements_round_trip_through_text(seed in any::<u64>(), deg in 1i64..6) {
        let (mut rng, p) = seeded_presentation(seed);
        let x = random_element(&mut rng, &p, deg, 0.5);
        prop_assume!(!x.is_zero());
        let text = p.format(&x);
        let back = p.parse(&text).unwrap();
        prop_assert_eq!(&back, &x, "{}", text);
        let e = expr::parse(&text).unwrap();
        prop_assert_eq!(expr::parse(&e.to_string()).unwrap().to_string(), e.to_string());
    }

    #[test]
    fn expression_whitespace_is_insignificant(seed in any::<u64>(), deg in 1i64..5) {
        let (mut rng, p) = seeded_presentation(seed);
        let x = random_element(&mut rng, &p, deg, 0.5);
        prop_assume!(!x.is_zero());
        let spaced: String = p
            .format(&x)
            .chars()
            .map(|c| if "[],+-*/".contains(c) { format!(" {c}  ") } else { c.to_string() })
            .collect();
        prop_assert_eq!(p.parse(&format!("  {spaced}")).unwrap(), x);
    }

    #[test]
    fn brackets_are_graded_antisymmetric(seed in any::<u64>(), a in 1i64..4, b in 1i64..4) {
        let (mut rng, p) = seeded_presentation(seed);
        let lie = p.lie();
        let x = random_element(&mut rng, &p, a, 0.6);
        let y = random_element(&mut rng, &p, b, 0.6);
        let sign = if (a * b) % 2 == 0 { q(-1) } else { q(1) };
        prop_assert_eq!(lie.bracket(&x, &y), lie.bracket(&y, &x).scale(&sign));
    }

    #[test]
    fn jacobi_holds(seed in any::<u64>(), a in 1i64..3, b in 1i64..3, c in 1i64..3) {
        let (mut rng, p) = seeded_presentation(seed);
        let lie = p.lie();
        let x = random_element(&mut rng, &p, a, 0.6);
        let y = random_element(&mut rng, &p, b, 0.6);
        let z = random_element(&mut rng, &p, c, 0.6);
        let sign = if (a * b) % 2 == 0 { q(1) } else { q(-1) };
        let lhs = lie.bracket(&x, &lie.bracket(&y, &z));
        let rhs = lie.bracket(&lie.bracket(&x, &y), &z).add(&lie.bracket(&y, &lie.bracket(&x, &z)).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_is_a_square_zero_derivation(seed in any::<u64>(), a in 1i64..4, b in 1i64..4) {
        let (mut rng, p) = seeded_presentation(seed);
        let lie = p.lie();
        let x = random_element(&mut rng, &p, a, 0.6);
        let y = random_element(&mut rng, &p, b, 0.6);
        prop_assert!(p.d(&p.d(&x)).is_zero());
        let sign = if a % 2 == 0 { q(1) } else { q(-1) };
        let lhs = p.d(&lie.bracket(&x, &y));
        let rhs = lie.bracket(&p.d(&x), &y).add(&lie.bracket(&x, &p.d(&y)).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coordinates_round_trip(seed in any::<u64>(), deg in 1i64..6) {
        let (mut rng, p) = seeded_presentation(seed);
        let lie = p.lie();
        let x = random_element(&mut rng, &p, deg, 0.5);
        let c = lie.coords(&x);
        prop_assert_eq!(c.len(), lie.dim(deg));
        prop_assert_eq!(lie.from_coords(deg, &c), x);
    }

    #[test]
    fn rank_nullity((r, c, e) in small_matrix()) {
        let m = Matrix::from_i64(r, c, &e);
        let rank = m.rank();
        let kernel = m.kernel();
        prop_assert_eq!(rank + kernel.len(), c);
        prop_assert_eq!(m.transpose().rank(), rank);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(Subspace::span(c, &kernel).dim(), kernel.len());
    }

    #[test]
    fn rank_is_invariant_under_invertible_maps((r, c, e) in small_matrix(), seed in any::<u64>()) {
        let m = Matrix::from_i64(r, c, &e);
        let mut rng = rng(seed);
        // a unipotent upper-triangular change of basis on the rows
        let mut g = Matrix::identity(r);
        for i in 0..r {
            for j in i + 1..r {
                g.set(i, j, q(rng.gen_range(-2..=2)));
            }
        }
        prop_assert_eq!(g.mul(&m).rank(), m.rank());
        let inv = g.inverse().unwrap();
        prop_assert_eq!(inv.mul(&g), Matrix::identity(r));
    }

    #[test]
    fn solve_finds_preimages((r, c, e) in small_matrix(), seed in any::<u64>()) {
        let m = Matrix::from_i64(r, c, &e);
        let mut rng = rng(seed);
        let x: Vec<Rational> = (0..c).map(|_| q(rng.gen_range(-3..=3))).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn bch_matches_the_group_law_on_heisenberg(x in prop::collection::vec(-5i64..=5, 3), y in prop::collection::vec(-5i64..=5, 3), z in prop::collection::vec(-5i64..=5, 3)) {
        let h = heisenberg();
        let g = NilpotentGroup::new(&h, 2).unwrap();
        let v = |u: &[i64]| u.iter().map(|&a| q(a)).collect::<Vec<_>>();
        let (x, y, z) = (v(&x), v(&y), v(&z));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inverse(&x)), vec![q(0); h.dim(0)]);
        // commuting elements multiply additively
        let x2: Vec<Rational> = x.iter().map(|a| a * q(2)).collect();
        prop_assert_eq!(g.mul(&x, &x), x2);
    }

    #[test]
    fn exponentials_are_automorphisms(seed in any::<u64>()) {
        let (mut rng, p) = seeded_presentation(seed);
        let lie = p.lie();
        // strictly lowering in generator index keeps the derivation nilpotent
        let values: Vec<LieElement> = (0..p.ngens())
            .map(|i| {
                let k = lie.gen_degree(i);
                let mut v = LieElement::zero(k);
                for key in &lie.basis(k).keys {
                    if key.word().iter().all(|&c| (c as usize) < i) && rng.gen_bool(0.5) {
                        v.add_scaled(&LieElement::basis(key.clone(), k), &q(rng.gen_range(-2..=2)));
                    }
                }
                v
            })
            .collect();
        let theta = Derivation::new(p.clone(), 0, values).unwrap();
        let e = theta.exp().unwrap();
        let x = random_element(&mut rng, &p, 2, 0.6);
        let y = random_element(&mut rng, &p, 3, 0.6);
        prop_assert_eq!(e.apply(&lie.bracket(&x, &y)), lie.bracket(&e.apply(&x), &e.apply(&y)));
        let back = theta.neg().exp().unwrap();
        prop_assert!(e.compose(&back).is_identity());
        if check_class(&Derivations, &[theta.clone(), theta.scale(&q(2))], 3).is_ok() {
            let z = bch(&Derivations, &theta, &theta.scale(&q(2)), 3).unwrap();
            prop_assert_eq!(z, theta.scale(&q(3)));
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let (mut rng, p) = seeded_presentation(seed);
        let lie = p.lie();
        let random_endo = |rng: &mut rand_chacha::ChaCha8Rng| {
            let images: Vec<LieElement> = (0..p.ngens()).map(|i| random_element(rng, &p, lie.gen_degree(i), 0.5)).collect();
            Morphism::new(p.clone(), p.clone(), images).unwrap()
        };
        let f = random_endo(&mut rng);
        let g = random_endo(&mut rng);
        let h = random_endo(&mut rng);
        let (left, right) = (f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(left.images(), right.images());
        let x = random_element(&mut rng, &p, 3, 0.5);
        prop_assert_eq!(f.compose(&g).apply(&x), f.apply(&g.apply(&x)));
    }
}
