use std::time::Instant;
use pfvolume::algebra::{parse_polynomial, ParamRationalFunction, SparsePolynomial, VarSet};
use pfvolume::telescoping::{telescope, AnsatzConfig};

fn main() {
    let vs = VarSet::new(vec!["t".into(), "x".into(), "y".into(), "z".into()]);
    let f = parse_polynomial("x*y*z*(1/3 - x - y - z) - t", &vs).unwrap();
    let g = f.derivative("x").mul(&SparsePolynomial::var(f.vars().clone(), "x"));
    let a = ParamRationalFunction::new(g, f);
    let t0 = Instant::now();
    let r = telescope(
        &a,
        &["x".into(), "y".into(), "z".into()],
        "t",
        &AnsatzConfig::default(),
    )
    .unwrap();
    println!(
        "tetra: ord {} deg {} in {:?}",
        r.telescoper.order(),
        r.telescoper.degree(),
        t0.elapsed()
    );
    println!("P = {}", r.telescoper);
}
