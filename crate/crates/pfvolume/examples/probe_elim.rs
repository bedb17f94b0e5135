use pfvolume::algebra::{parse_polynomial, squarefree_part, VarSet};
use pfvolume::geometry::critical_eliminant;

fn main() {
    let vs = VarSet::new(vec!["x".into(), "y".into(), "z".into()]);
    let f = parse_polynomial(
        "(1 - x^2 - y^2 - z^2)*(1 - (x-1)^2 - y^2 - z^2) - 1/1000",
        &vs,
    )
    .unwrap();
    let sf = squarefree_part(&f);
    println!("sf terms: {}", sf.num_terms());
    match critical_eliminant(&sf, "x") {
        Ok(e) => println!("x: OK deg {} : {:?}", e.deg(), e.coeffs().len()),
        Err(e) => println!("x: ERR {e}"),
    }
}
