//! Chevalley-Eilenberg cohomology of small Lie algebras and a product comparison.

use dglie::ce::{ce_cohomology, ce_product_check};
use dglie::dgla::{heisenberg, sl2, SharedDgla};
use std::sync::Arc;

fn main() {
    let s: SharedDgla = Arc::new(sl2());
    let h: SharedDgla = Arc::new(heisenberg());
    println!("sl2: {:?}", ce_cohomology(s.clone(), 1, 3).unwrap());
    println!("heisenberg: {:?}", ce_cohomology(h.clone(), 1, 3).unwrap());
    println!("heisenberg, coefficients of dim 3: {:?}", ce_cohomology(h.clone(), 3, 3).unwrap());
    for v in ce_product_check(s, h, 1, 1, 6).unwrap() {
        println!("sl2 x heisenberg, {}: {}", v.check, v.pass);
    }
}
