//! Frozen values, each checked against something computed independently of
//! the library where one exists.

mod common;

use common::*;
use dglie::algebra::rational::Rational;
use dglie::ce::{ce_cohomology, NilpotentGroup};
use dglie::derivations::{der_complex, deru, DeruMode};
use dglie::dgla::{heisenberg, sl2, DgLieAlgebra, SharedDgla};
use dglie::freelie::FreeLie;
use dglie::gluing::{boundary_connected_sum, glue_headline_g};
use dglie::io;
use dglie::models::{build_block_g, build_tilde_g, OMEGA};
use dglie::report::all_pass;
use num_traits::Zero;
use std::sync::Arc;

/// Free Lie dimensions from the graded PBW identity
/// `prod_k (1 + t^k)^{a_k} / (1 - t^k)^{a_k}` (odd / even k) `= 1 / (1 - sum t^{d_i})`,
/// solved degree by degree for the `a_k`.
fn pbw_dims(gen_degrees: &[i64], top: usize) -> Vec<i64> {
    let mut tensor = vec![0i64; top + 1];
    tensor[0] = 1;
    for k in 1..=top {
        tensor[k] = gen_degrees.iter().filter(|&&d| d as usize <= k).map(|&d| tensor[k - d as usize]).sum();
    }
    let mut dims = vec![0i64; top + 1];
    for k in 1..=top {
        // the series of the product over degrees < k, truncated at k
        let mut series = vec![0i64; top + 1];
        series[0] = 1;
        for j in 1..k {
            for _ in 0..dims[j] {
                if j % 2 == 1 {
                    for n in (j..=top).rev() {
                        series[n] += series[n - j];
                    }
                } else {
                    for n in j..=top {
                        series[n] += series[n - j];
                    }
                }
            }
        }
        dims[k] = tensor[k] - series[k];
    }
    dims
}

fn lie_dims(gens: &[(&str, i64)], top: i64) -> Vec<i64> {
    let lie = FreeLie::new(gens).unwrap();
    (0..=top).map(|k| lie.dim(k) as i64).collect()
}

#[test]
fn free_lie_dimensions_match_the_pbw_count() {
    let cases: Vec<Vec<(&str, i64)>> = vec![
        vec![("x", 1)],
        vec![("x", 2)],
        vec![("x", 1), ("y", 1)],
        vec![("x", 2), ("y", 2)],
        vec![("x", 1), ("y", 2)],
        vec![("x", 1), ("y", 2), ("z", 3)],
        vec![("a", 3), ("b", 3), ("c", 3), ("d", 3)],
        vec![("x", 1), ("y", 1), ("z", 1)],
    ];
    for gens in cases {
        let degrees: Vec<i64> = gens.iter().map(|g| g.1).collect();
        assert_eq!(lie_dims(&gens, 10), pbw_dims(&degrees, 10), "{gens:?}");
    }
}

#[test]
fn witt_numbers_on_even_generators() {
    // necklace counts: two letters 2, 1, 2, 3, 6, 9; three letters 3, 3, 8, 18, 48, 116
    let two = lie_dims(&[("a", 2), ("b", 2)], 12);
    assert_eq!((1..=6).map(|l| two[2 * l]).collect::<Vec<_>>(), vec![2, 1, 2, 3, 6, 9]);
    let three = lie_dims(&[("a", 2), ("b", 2), ("c", 2)], 12);
    assert_eq!((1..=6).map(|l| three[2 * l]).collect::<Vec<_>>(), vec![3, 3, 8, 18, 48, 116]);
    assert!(two.iter().step_by(2).skip(1).all(|&d| d > 0) && two.iter().skip(1).step_by(2).all(|&d| d == 0));
}

#[test]
fn odd_generator_has_one_square() {
    assert_eq!(lie_dims(&[("x", 1)], 6), vec![0, 1, 1, 0, 0, 0, 0]);
    assert_eq!(lie_dims(&[("x", 3)], 8), vec![0, 0, 0, 1, 0, 0, 1, 0, 0]);
    // two odd letters: x, y; [x,x], [x,y], [y,y]; [x,[x,y]], [y,[x,y]]
    assert_eq!(lie_dims(&[("x", 1), ("y", 1)], 3), vec![0, 2, 3, 2]);
}

#[test]
fn presentation_homology() {
    let frozen: &[(&str, [usize; 6], [usize; 6])] = &[
        ("interval_target", [0, 0, 0, 0, 0, 0], [0, 1, 1, 0, 1, 1]),
        ("mixed", [1, 2, 0, 0, 0, 0], [1, 2, 1, 2, 3, 5]),
        ("nonminimal", [0, 0, 0, 0, 0, 0], [1, 2, 1, 1, 2, 3]),
        ("point2", [0, 1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]),
        ("s2", [1, 1, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0]),
        ("tilde_w11", [0, 2, 0, 1, 0, 2], [0, 2, 0, 2, 1, 4]),
        ("twisted8", [0, 0, 4, 0, 0, 10], [0, 0, 4, 0, 0, 10]),
        ("w11", [0, 2, 0, 1, 0, 2], [0, 2, 0, 1, 0, 2]),
        ("w21", [0, 4, 0, 6, 0, 20], [0, 4, 0, 6, 0, 20]),
    ];
    let all = presentations();
    assert_eq!(all.len(), frozen.len());
    for (name, betti, dims) in frozen {
        let p = &all.iter().find(|(n, _)| n == name).unwrap().1;
        let h: Vec<usize> = p.homology(1, 6).unwrap().iter().map(|g| g.betti).collect();
        assert_eq!(h, betti.to_vec(), "{name}");
        let d: Vec<usize> = (1..=6).map(|k| p.lie().dim(k)).collect();
        assert_eq!(d, dims.to_vec(), "{name}");
    }
    // with d = 0 the homology is the free Lie algebra itself
    for name in ["w11", "w21", "twisted8"] {
        let p = &all.iter().find(|(n, _)| n == name).unwrap().1;
        let degrees = p.lie().degrees().to_vec();
        let pbw = pbw_dims(&degrees, 6);
        let h: Vec<i64> = p.homology(1, 6).unwrap().iter().map(|g| g.betti as i64).collect();
        assert_eq!(h, pbw[1..].to_vec(), "{name}");
    }
}

fn table(name: &str) -> SharedDgla {
    let (file, text) = read(&fixture(&format!("tables/{name}.json")));
    Arc::new(io::parse_table(&file, &text).unwrap())
}

#[test]
fn chevalley_eilenberg_values() {
    assert_eq!(ce_cohomology(Arc::new(heisenberg()), 1, 3).unwrap(), vec![1, 2, 2, 1]);
    assert_eq!(ce_cohomology(table("heisenberg"), 1, 4).unwrap(), vec![1, 2, 2, 1, 0]);
    assert_eq!(ce_cohomology(Arc::new(sl2()), 1, 4).unwrap(), vec![1, 0, 0, 1, 0]);
    assert_eq!(ce_cohomology(table("sl2"), 2, 4).unwrap(), vec![2, 0, 0, 2, 0]);
    // a degree-2 class suspends to an exterior generator of degree 3
    assert_eq!(ce_cohomology(table("abelian_even"), 1, 7).unwrap(), vec![1, 0, 0, 1, 0, 0, 0, 0]);
    // a degree-1 class suspends to a polynomial generator of degree 2
    assert_eq!(ce_cohomology(table("abelian_odd"), 1, 6).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
    assert_eq!(ce_cohomology(table("abelian_plane"), 1, 4).unwrap(), vec![1, 2, 1, 0, 0]);
}

#[test]
fn heisenberg_group_law() {
    let h = heisenberg();
    let g = NilpotentGroup::new(&h, 2).unwrap();
    let v = |a: i64, b: i64, c: i64| vec![q(a), q(b), q(c)];
    // (a, b, c)(a', b', c') = (a + a', b + b', c + c' + (ab' - ba')/2)
    assert_eq!(g.mul(&v(1, 0, 0), &v(0, 1, 0)), vec![q(1), q(1), qf(1, 2)]);
    assert_eq!(g.mul(&v(0, 1, 0), &v(1, 0, 0)), vec![q(1), q(1), qf(-1, 2)]);
    assert_eq!(g.mul(&v(2, 3, 1), &v(-1, 4, 0)), vec![q(1), q(7), q(1) + qf(2 * 4 - 3 * -1, 2)]);
    assert_eq!(g.inverse(&v(2, 3, 1)), v(-2, -3, -1));
}

#[test]
fn derivations_relative_to_omega() {
    for (name, sp, unipotent) in [("w11", 3, vec![0usize, 0, 0, 0]), ("w21", 10, vec![0, 0, 4, 0])] {
        let m = model(name);
        let all = der_complex(m.presentation(), Some(OMEGA), -1, 1).unwrap();
        assert_eq!(all.dim(0), sp, "{name}");
        let top = m.presentation().lie().degrees().iter().copied().max().unwrap();
        let rho = m.rho(top).unwrap();
        let u = deru(m.presentation(), Some(OMEGA), Some(&rho), 4, DeruMode::SemisimpleAsserted).unwrap();
        let h: Vec<usize> = u.homology(0, 3).unwrap().iter().map(|g| g.betti).collect();
        assert_eq!(h, unipotent, "{name}");
    }
}

#[test]
fn block_algebra_homology() {
    let frozen: &[(&str, [usize; 4])] =
        &[("w11", [2, 0, 0, 0]), ("w21", [4, 0, 4, 0]), ("s2xs2", [0, 6, 1, 0]), ("twisted8", [0, 0, 0, 24])];
    for (name, betti) in frozen {
        let m = model(name);
        let g = build_block_g(&m, 4, DeruMode::SemisimpleAsserted).unwrap();
        assert!(all_pass(&g.verdicts), "{name}");
        assert_eq!(g.betti(0, 3).unwrap(), betti.to_vec(), "{name}");
        let t = build_tilde_g(&m, 4).unwrap();
        assert_eq!(t.betti(0, 3).unwrap(), betti.to_vec(), "tilde {name}");
    }
    let w11 = build_block_g(&model("w11"), 3, DeruMode::SemisimpleAsserted).unwrap();
    assert_eq!((w11.algebra.dim(0), w11.hom.dim(0), w11.der.dim(0)), (2, 2, 0));
    let t8 = build_block_g(&model("twisted8"), 3, DeruMode::SemisimpleAsserted).unwrap();
    assert_eq!((t8.der.dim(3), t8.hom.dim(3)), (20, 4));
}

#[test]
fn omega_of_the_shipped_models() {
    for (name, m) in models() {
        let lie = m.presentation().lie();
        let want = omega_oracle(&pairing_of(&m), lie.degrees());
        assert_eq!(from_library(&lie.to_tensor(m.omega())), want, "{name}");
        assert!(!m.omega().is_zero(), "{name}");
    }
    let m = model("w11");
    let (s, _, v) = boundary_connected_sum(&m, &m).unwrap();
    assert!(v.pass);
    assert_eq!(s.presentation().ngens(), 4);
    let mut terms = 0;
    for (_, c) in s.omega().terms() {
        assert!(!c.is_zero());
        terms += 1;
    }
    assert_eq!(terms, 2);
}

fn pairing_of(m: &dglie::models::ManifoldModel) -> Vec<Vec<Rational>> {
    let p = m.space().pairing();
    (0..p.rows()).map(|i| p.row(i).to_vec()).collect()
}

#[test]
fn gluing_w11_with_itself() {
    let m = model("w11");
    let g = glue_headline_g(&m, &m, 2, DeruMode::SemisimpleAsserted, true).unwrap();
    assert!(all_pass(&g.verdicts));
    let w21 = build_block_g(&model("w21"), 2, DeruMode::SemisimpleAsserted).unwrap();
    assert_eq!(g.sum.betti(0, 1).unwrap(), w21.betti(0, 1).unwrap());
    assert_eq!(g.sum.betti(0, 1).unwrap(), vec![4, 0]);
}
