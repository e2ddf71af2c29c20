//! Checking a homotopy between two maps with interval forms.

use dglie::ce::homotopy_check;
use dglie::io;
use std::sync::Arc;

fn fixture(rel: &str) -> (String, String) {
    let path = format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    (path, text)
}

fn main() {
    let (sp, st) = fixture("presentations/point2.json");
    let (tp, tt) = fixture("presentations/interval_target.json");
    let source = Arc::new(io::parse_presentation(&sp, &st).unwrap());
    let target = Arc::new(io::parse_presentation(&tp, &tt).unwrap());
    for job in ["jobs/homotopy.json", "jobs/homotopy_wrong.json"] {
        let (jp, jt) = fixture(job);
        let (f, g, h) = io::parse_homotopy(&jp, &jt, &source, &target).unwrap();
        println!("{job}:");
        for v in homotopy_check(&h, &f, &g, None).unwrap() {
            println!("  {}: {}{}", v.check, v.pass, v.witness.map(|w| format!(" ({w})")).unwrap_or_default());
        }
    }
}
