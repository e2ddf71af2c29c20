//! Lyndon bases, brackets and the text grammar of a free graded Lie algebra.

use dglie::freelie::FreeLie;

fn main() {
    let lie = FreeLie::new(&[("x", 1), ("y", 2)]).unwrap();
    for k in 1..=6 {
        let names: Vec<String> = lie.basis(k).keys.iter().map(|key| lie.format_key(key)).collect();
        println!("degree {k}: dim {} {:?}", lie.dim(k), names);
    }
    let x = lie.generator(0);
    let y = lie.generator(1);
    // an odd generator squares to something nonzero
    println!("[x,x] = {}", lie.format(&lie.bracket(&x, &x)));
    println!("[x,y] = {}", lie.format(&lie.bracket(&x, &y)));
    let e = lie.parse("2*[x,[x,y]] + [[x,y],x]").unwrap();
    println!("parsed: {} (degree {})", lie.format(&e), e.degree());
    // Jacobi for odd x: [x,[x,y]] = 1/2 [[x,x],y]
    let j = lie.parse("[x,[x,y]] - 1/2*[[x,x],y]").unwrap();
    println!("Jacobi defect: {}", lie.format(&j));
}
