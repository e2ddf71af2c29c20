//! The block dg Lie algebra of each shipped model, and its stabilized counterpart.

use dglie::derivations::DeruMode;
use dglie::dgla::DgLieAlgebra;
use dglie::io;
use dglie::models::{build_block_g, build_tilde_g};

fn main() {
    for name in ["w11", "w21", "s2xs2", "twisted8"] {
        let path = format!("{}/../../fixtures/models/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap();
        let m = io::parse_model_data(&path, &text).unwrap().build().unwrap();
        let block = build_block_g(&m, 4, DeruMode::SemisimpleAsserted).unwrap();
        let tilde = build_tilde_g(&m, 4).unwrap();
        let dims: Vec<(usize, usize)> = (0..=3).map(|k| (block.der.dim(k), block.hom.dim(k))).collect();
        println!("{name}: (der, hom) dims {dims:?}");
        println!("  homology {:?}, stabilized {:?}", block.betti(0, 3).unwrap(), tilde.betti(0, 3).unwrap());
        let failed = block.structure(10).into_iter().filter(|v| !v.pass).count();
        println!("  {failed} structure checks failed");
    }
}
