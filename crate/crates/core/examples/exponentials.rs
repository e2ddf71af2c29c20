//! Exponentials of nilpotent derivations, Baker-Campbell-Hausdorff and inverting automorphisms.

use dglie::algebra::rational::{format_rational, q};
use dglie::ce::bch::Derivations;
use dglie::ce::{bch, NilpotentGroup};
use dglie::derivations::Derivation;
use dglie::dgla::heisenberg;
use dglie::freelie::Presentation;
use std::sync::Arc;

fn main() {
    let p = Arc::new(
        Presentation::builder()
            .generator("x", 2)
            .generator("y", 2)
            .generator("z", 4)
            .build()
            .unwrap(),
    );
    let theta = Derivation::from_exprs(p.clone(), 0, &[("y".into(), "x".into())]).unwrap();
    let psi = Derivation::from_exprs(p.clone(), 0, &[("z".into(), "[x,y]".into())]).unwrap();
    let z = bch(&Derivations, &theta, &psi, 3).unwrap();
    let (ez, et, ep) = (z.exp().unwrap(), theta.exp().unwrap(), psi.exp().unwrap());
    println!("e^bch = e^theta e^psi: {}", ez.images() == et.compose(&ep).images());
    let f = ez.invert(None).unwrap();
    println!("inverse is exact: {}", f.compose(&ez).is_identity());
    for (i, x) in f.images().iter().enumerate() {
        println!("  {} -> {}", p.lie().name(i), p.format(x));
    }

    let h = heisenberg();
    let g = NilpotentGroup::new(&h, 2).unwrap();
    let a = vec![q(1), q(0), q(0)];
    let b = vec![q(0), q(1), q(0)];
    println!("heisenberg group: {:?}", g.mul(&a, &b).iter().map(format_rational).collect::<Vec<_>>());
}
