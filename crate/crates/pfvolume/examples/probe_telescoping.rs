//! Scratch probe for telescoper search timings on representative inputs.

use std::time::Instant;

use pfvolume::algebra::{parse_polynomial, ParamRationalFunction, SparsePolynomial, VarSet};
use pfvolume::telescoping::{telescope, AnsatzConfig};

fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
    let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
    parse_polynomial(src, &vs).unwrap()
}

fn slice_integrand(f: &SparsePolynomial, dvar: &str) -> ParamRationalFunction {
    let g = f
        .derivative(dvar)
        .mul(&SparsePolynomial::var(f.vars().clone(), dvar));
    ParamRationalFunction::new(g, f.clone())
}

fn main() {
    let cfg = AnsatzConfig::default();
    let cases: Vec<(&str, SparsePolynomial, Vec<String>, String)> = vec![
        (
            "lp ball n=3 p=8 slice",
            p("1 - x^8 - y^8 - z^8", &["x", "y", "z"]),
            vec!["x".into(), "y".into()],
            "z".into(),
        ),
        (
            "triangle deformation (param t)",
            p("(1 - x - y)*y*(x - y + 1) - t", &["t", "x", "y"]),
            vec!["x".into(), "y".into()],
            "t".into(),
        ),
        (
            "disk deformation (param t)",
            p("1 - x^2 - y^2 - t", &["t", "x", "y"]),
            vec!["x".into(), "y".into()],
            "t".into(),
        ),
        (
            "tetrahedron deformation (param t)",
            p("x*y*z*(1/3 - x - y - z) - t", &["t", "x", "y", "z"]),
            vec!["x".into(), "y".into(), "z".into()],
            "t".into(),
        ),
        (
            "ellipse+circle deformation (param t)",
            p(
                "(1 - 4*x^2 - (y - 1/2)^2)*(1 - (x - 1/2)^2 - y^2) - t",
                &["t", "x", "y"],
            ),
            vec!["x".into(), "y".into()],
            "t".into(),
        ),
        (
            "two l4 balls deformation (param t)",
            p(
                "(1 - x^4 - y^4)*(1 - (x - 1/2)^4 - y^4) - t",
                &["t", "x", "y"],
            ),
            vec!["x".into(), "y".into()],
            "t".into(),
        ),
    ];
    for (name, f, int_vars, param) in cases {
        let a = slice_integrand(&f, &int_vars[0]);
        let t0 = Instant::now();
        match telescope(&a, &int_vars, &param, &cfg) {
            Ok(r) => {
                println!(
                    "{name}: ord {} deg {} in {:?} (attempts {:?})",
                    r.telescoper.order(),
                    r.telescoper.degree(),
                    t0.elapsed(),
                    r.search_stats.attempts.len(),
                );
                println!("  P = {}", r.telescoper);
            }
            Err(e) => println!("{name}: FAILED {e} after {:?}", t0.elapsed()),
        }
    }
}
