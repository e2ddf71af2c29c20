//! The derivation complex of a presentation relative to a sub, and its unipotent part.

use dglie::derivations::{der_complex, deru, DeruMode};
use dglie::dgla::DgLieAlgebra;
use dglie::io;
use dglie::models::OMEGA;

fn main() {
    let path = format!("{}/../../fixtures/models/w21.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    let m = io::parse_model_data(&path, &text).unwrap().build().unwrap();
    let p = m.presentation();

    let all = der_complex(p, Some(OMEGA), -1, 3).unwrap();
    for k in 0..=2 {
        println!("Der rel omega, degree {k}: dim {}", all.dim(k));
    }
    let rho = m.rho(3).unwrap();
    let u = deru(p, Some(OMEGA), Some(&rho), 4, DeruMode::SemisimpleAsserted).unwrap();
    let betti: Vec<usize> = u.homology(0, 3).unwrap().iter().map(|h| h.betti).collect();
    println!("unipotent part, homology in degrees 0..3: {betti:?}");

    let theta = &u.basis_derivations(2)[0];
    for i in 0..p.ngens() {
        println!("  {} -> {}", p.lie().name(i), p.format(&theta.eval(&p.lie().generator(i))));
    }
    println!("theta fixes omega: {}", theta.vanishes_on(OMEGA).unwrap());
    println!("[d, theta] is zero: {}", theta.d_commutator().is_zero());
}
