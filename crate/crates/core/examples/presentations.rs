//! Loading quasi-free presentations, their homology, indecomposables and pushouts.

use dglie::freelie::{pushout, Presentation};
use dglie::io;
use std::sync::Arc;

fn load(name: &str) -> Arc<Presentation> {
    let path = format!("{}/../../fixtures/presentations/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    Arc::new(io::parse_presentation(&path, &text).unwrap())
}

fn main() {
    let p = load("mixed");
    for v in p.validate() {
        println!("{}: {}", v.check, if v.pass { "ok" } else { "FAILED" });
    }
    let betti: Vec<usize> = p.homology(1, 5).unwrap().iter().map(|h| h.betti).collect();
    println!("homology in degrees 1..5: {betti:?}");
    let ind = p.indecomposables(Some("X")).unwrap();
    let names: Vec<&str> = ind.generators.iter().map(|&i| p.lie().name(i)).collect();
    println!("indecomposables relative to X: {names:?}");

    let built = Arc::new(
        Presentation::builder()
            .generator("a", 2)
            .generator("b", 3)
            .differential("b", "[a,a]")
            .build()
            .unwrap(),
    );
    let po = pushout(&built, &load("s2"), None).unwrap();
    println!("free product has {} generators", po.presentation.ngens());
    println!("{}", serde_json::to_string_pretty(&io::presentation_to_json(&po.presentation)).unwrap());
}
