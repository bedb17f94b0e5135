use std::time::Instant;
use pfvolume::algebra::{parse_polynomial, SparsePolynomial, VarSet};
use pfvolume::telescoping::AnsatzProblem;

fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
    let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
    parse_polynomial(src, &vs).unwrap()
}

fn main() {
    let f = p("x*y*z*(1/3 - x - y - z) - t", &["t", "x", "y", "z"]);
    let g = f.derivative("x").mul(&SparsePolynomial::var(f.vars().clone(), "x"));
    let int_vars: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    let prob = AnsatzProblem::new(&f, &g, &int_vars, "t");
    println!("deformation mode: {}", prob.deformation_mode);
    for (r, d) in [(1usize, 2u32), (2, 4), (3, 6), (3, 8), (4, 8), (4, 12)] {
        let cert = d + prob.g.total_degree() + (r as u32) * prob.f.total_degree() + 1;
        let t0 = Instant::now();
        let sys = pfvolume::telescoping::build_system_public(&prob, r, d, cert);
        let build = t0.elapsed();
        let nnz: usize = sys.rows.iter().map(|r| r.len()).sum();
        println!(
            "r={r} D={d} cert={cert}: rows={} cols={} (b={}) nnz={nnz} build {build:?}",
            sys.rows.len(),
            sys.ncols,
            sys.n_b_cols
        );
        let t1 = Instant::now();
        let sol = pfvolume::telescoping::solve_entry_public(&prob, &sys, 0);
        println!("  solve {:?} -> {}", t1.elapsed(), sol.is_some());
        if let Some(s) = sol {
            let ords: Vec<usize> = s.op_coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
            println!("  nonzero op coeff orders: {ords:?}");
            break;
        }
    }
}
