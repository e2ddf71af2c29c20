//! Gluing block algebras along a boundary connected sum, and the stabilization comparisons.

use dglie::derivations::DeruMode;
use dglie::gluing::{forget_tilde, glue_headline_g, xi_comparison};
use dglie::io;
use dglie::models::ManifoldModel;

fn load(name: &str) -> ManifoldModel {
    let path = format!("{}/../../fixtures/models/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    io::parse_model_data(&path, &text).unwrap().build().unwrap()
}

fn main() {
    let (w11, w21) = (load("w11"), load("w21"));
    let glued = glue_headline_g(&w11, &w21, 2, DeruMode::SemisimpleAsserted, true).unwrap();
    for v in &glued.verdicts {
        println!("{}: {}", v.check, v.pass);
    }
    println!("homology of the sum: {:?}", glued.sum.betti(0, 1).unwrap());
    for m in [&w11, &w21] {
        let xi = xi_comparison(m, 4, DeruMode::SemisimpleAsserted).unwrap();
        println!("extension by zero: ranks {:?} -> {:?}, induced rank {:?}", xi.left_betti, xi.right_betti, xi.xi_rank);
        let f = forget_tilde(m, 4).unwrap();
        println!("forgetful comparison: {:?} / {:?} / {:?}", f.left_betti, f.pullback_betti, f.right_betti);
    }
}
