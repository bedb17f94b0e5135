//! Resultants with respect to one variable.
//!
//! `sylvester_resultant` computes the exact Sylvester resultant by
//! fraction-free (Bareiss) elimination on the Sylvester matrix, which stays
//! in the polynomial ring throughout. `resultant` wraps it with the shared
//! factor check used by the elimination pipeline; `eliminant_step` is the
//! faster pseudo-remainder variant that may carry extraneous factors, which
//! downstream critical-value selection tolerates by construction.

use thiserror::Error;

use super::gcd::poly_gcd;
use super::poly::{SparsePolynomial, VarSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResultantError {
    #[error("inputs share a factor involving the eliminated variable")]
    ZeroResultant,
    #[error("resultant undefined: both inputs are zero in the variable")]
    NotInvolvingVariable,
}

/// Fraction-free determinant of a square polynomial matrix.
fn bareiss_det(mut m: Vec<Vec<SparsePolynomial>>, vars: &VarSet) -> SparsePolynomial {
    let n = m.len();
    if n == 0 {
        return SparsePolynomial::one(vars.clone());
    }
    let mut sign = false;
    let mut prev = SparsePolynomial::one(vars.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return SparsePolynomial::zero(vars.clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = SparsePolynomial::zero(vars.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Exact Sylvester resultant of `f` and `g` with respect to `v`.
pub fn sylvester_resultant(
    f: &SparsePolynomial,
    g: &SparsePolynomial,
    v: &str,
) -> SparsePolynomial {
    let vars = f.vars().union(g.vars());
    let f = f.extend_vars(&vars);
    let g = g.extend_vars(&vars);
    let fu = f.as_univariate_in(v);
    let gu = g.as_univariate_in(v);
    let m = fu.len().saturating_sub(1);
    let n = gu.len().saturating_sub(1);
    let cvars = if !fu.is_empty() {
        fu[0].vars().clone()
    } else {
        gu[0].vars().clone()
    };
    if m == 0 && n == 0 {
        // constants in v: resultant is 1 by convention
        return SparsePolynomial::one(cvars);
    }
    let size = m + n;
    let zero = SparsePolynomial::zero(cvars.clone());
    let mut mat = vec![vec![zero.clone(); size]; size];
    // n rows of f's coefficients (descending), m rows of g's.
    for r in 0..n {
        for (i, c) in fu.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in gu.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    bareiss_det(mat, &cvars)
}

/// Sylvester resultant with the shared-factor error required by the
/// elimination contract: errors if `f` and `g` have a common factor that
/// involves `v` (equivalently, the resultant vanishes identically).
pub fn resultant(
    f: &SparsePolynomial,
    g: &SparsePolynomial,
    v: &str,
) -> Result<SparsePolynomial, ResultantError> {
    if f.degree_in(v) == 0 && g.degree_in(v) == 0 {
        return Err(ResultantError::NotInvolvingVariable);
    }
    let r = sylvester_resultant(f, g, v);
    if r.is_zero() {
        return Err(ResultantError::ZeroResultant);
    }
    Ok(r)
}

/// Elimination step used by the critical-value pipeline: removes the shared
/// factor if there is one, then returns a nonzero polynomial that vanishes on
/// the projection of every common root of `f`, `g` (possibly with extraneous
/// factors). Pseudo-remainder sequences keep the intermediate sizes small.
pub fn eliminant_step(
    f: &SparsePolynomial,
    g: &SparsePolynomial,
    v: &str,
) -> Result<SparsePolynomial, ResultantError> {
    let f = f.primitive_part();
    let g = g.primitive_part();
    if f.degree_in(v) == 0 && g.degree_in(v) == 0 {
        return Err(ResultantError::NotInvolvingVariable);
    }
    // a shared factor involving v surfaces as a vanishing pseudo-remainder
    // inside the loop below; v-free shared factors ride along as contents
    // and are multiplied back in, keeping the superset property
    if f.degree_in(v) == 0 {
        return Ok(f);
    }
    if g.degree_in(v) == 0 {
        return Ok(g);
    }
    let vars = f.vars().union(g.vars());
    let f = f.extend_vars(&vars);
    let g = g.extend_vars(&vars);
    let mut a = f.as_univariate_in(v);
    let mut b = g.as_univariate_in(v);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    // collect leading coefficients; common roots where both degrees drop
    // project into their vanishing loci
    let mut extra = a.last().unwrap().mul(b.last().unwrap());
    loop {
        let r = super::gcd::pseudo_rem(&a, &b);
        if r.is_empty() {
            // should have been caught by the gcd check
            return Err(ResultantError::ZeroResultant);
        }
        if r.len() == 1 {
            let scalar = r.into_iter().next().unwrap();
            return Ok(scalar.mul(&extra).primitive_part());
        }
        let cont = super::gcd::coeff_gcd(&r);
        let r: Vec<SparsePolynomial> = r
            .iter()
            .map(|c| c.exact_div(&cont).expect("primitive part"))
            .collect();
        extra = extra.mul(&cont);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_polynomial, VarSet};
    use super::*;

    fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
        let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
        parse_polynomial(src, &vs).unwrap()
    }

    #[test]
    fn circle_extremes() {
        // res_y(1 - x^2 - y^2, -2y) is a multiple of 1 - x^2
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let g = p("-2*y", &["x", "y"]);
        let r = resultant(&f, &g, "y").unwrap();
        let target = p("1 - x^2", &["x"]);
        assert!(r.exact_div(&target).is_some(), "r = {r}");
        let e = eliminant_step(&f, &g, "y").unwrap();
        assert!(e.exact_div(&target).is_some() || target.exact_div(&e).is_some());
    }

    #[test]
    fn hand_solved_system() {
        // res_y(x^2 + y^2 - 1, x - y) vanishes exactly on x = +-1/sqrt(2)
        let f = p("x^2 + y^2 - 1", &["x", "y"]);
        let g = p("x - y", &["x", "y"]);
        let r = resultant(&f, &g, "y").unwrap();
        let target = p("2*x^2 - 1", &["x"]);
        assert!(r.exact_div(&target).is_some(), "r = {r}");
    }

    #[test]
    fn linear_case_sign() {
        let f = p("x - 3", &["x", "y"]);
        let g = p("x + y", &["x", "y"]);
        let r = resultant(&f, &g, "x").unwrap();
        let t = p("y + 3", &["y"]);
        assert!(r == t || r == t.neg(), "r = {r}");
    }

    #[test]
    fn shared_factor_is_error() {
        let f = p("(x-1)*(y-2)", &["x", "y"]);
        let g = p("(x-1)*(y+2)", &["x", "y"]);
        assert_eq!(
            resultant(&f, &g, "x").unwrap_err(),
            ResultantError::ZeroResultant
        );
        assert_eq!(
            eliminant_step(&f, &g, "x").unwrap_err(),
            ResultantError::ZeroResultant
        );
    }

    #[test]
    fn common_root_projection_vanishes() {
        // system with known common root (x, y) = (2, 5)
        let f = p("y - x - 3", &["x", "y"]);
        let g = p("y + x - 7", &["x", "y"]);
        let r = resultant(&f, &g, "y").unwrap();
        use super::super::rat;
        assert_eq!(r.eval(&[rat(2, 1)]), rat(0, 1));
    }
}
