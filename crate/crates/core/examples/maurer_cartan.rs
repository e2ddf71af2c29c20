//! Maurer-Cartan elements and the gauge action, in a twisted Hom complex and in derivations.

use dglie::algebra::rational::{format_rational, q, Rational};
use dglie::ce::{gauge_action, mc_check};
use dglie::derivations::{der_complex, Derivation};
use dglie::dgla::{DgLieAlgebra, SharedDgla};
use dglie::freelie::Presentation;
use dglie::io;
use dglie::models::{twisted_action, Adjoint, OuterAction};
use std::sync::Arc;

fn main() {
    let path = format!("{}/../../fixtures/models/twisted8.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    let m = io::parse_model_data(&path, &text).unwrap().build().unwrap();
    let action = twisted_action(&m, -1, 1).unwrap();
    println!("twisted Hom: dim {} in degree -1", action.hom().dim(-1));
    let tau: Vec<Rational> = (0..action.hom().dim(-1)).map(|i| q(i as i64 + 1)).collect();
    let (ok, _) = mc_check(action.module().as_ref(), &tau).unwrap();
    println!("tau is Maurer-Cartan: {ok}");

    // a nonabelian example: derivations of a free Lie algebra under the adjoint action
    let p = Arc::new(Presentation::builder().generator("x", 1).generator("y", 2).generator("z", 3).build().unwrap());
    let slice = Arc::new(der_complex(&p, None, -2, 0).unwrap());
    let der: SharedDgla = slice.clone();
    let adj = Adjoint(der.clone());
    let theta = Derivation::from_exprs(p.clone(), 0, &[("z".into(), "[x,y]".into())]).unwrap();
    let theta = slice.coords(&theta).unwrap();
    for i in 0..der.dim(-1) {
        let mut v = vec![q(0); der.dim(-1)];
        v[i] = q(1);
        let (ok, residual) = mc_check(der.as_ref(), &v).unwrap();
        let residual: Vec<String> = residual.iter().map(format_rational).collect();
        println!("{} is MC: {ok} (residual {residual:?})", der.basis_name(-1, i));
        if ok {
            let moved = gauge_action(&adj, &theta, &v).unwrap();
            let (still, _) = mc_check(der.as_ref(), &moved).unwrap();
            println!("  after gauge: {:?}, still MC: {still}", moved.iter().map(format_rational).collect::<Vec<_>>());
        }
    }
}
