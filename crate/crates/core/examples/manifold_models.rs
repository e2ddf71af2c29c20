//! Manifold models: the symplectic form, the stabilized model and boundary connected sums.

use dglie::gluing::boundary_connected_sum;
use dglie::io;
use dglie::models::ManifoldModel;

fn load(name: &str) -> ManifoldModel {
    let path = format!("{}/../../fixtures/models/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    io::parse_model_data(&path, &text).unwrap().build().unwrap()
}

fn main() {
    for name in ["w11", "w21", "s2xs2", "twisted8"] {
        let m = load(name);
        let t = m.tilde().unwrap();
        println!(
            "{name}: dimension {}, omega = {}, stabilized model has {} generators",
            m.dimension(),
            m.presentation().format(m.omega()),
            t.presentation.ngens()
        );
    }
    let (sum, _, additive) = boundary_connected_sum(&load("w11"), &load("w21")).unwrap();
    println!("w11 # w21: omega = {} ({})", sum.presentation().format(sum.omega()), additive.check);
}
