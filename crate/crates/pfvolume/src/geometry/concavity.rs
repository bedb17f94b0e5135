//! Concavity spot check: exact negative-semidefiniteness of the Hessian for
//! quadratics, sampled Hessian tests otherwise.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Rat, SparsePolynomial};

use super::{ConvexBodySpec, GeometryError};

#[derive(Debug, Clone)]
pub struct ConcavityReport {
    /// exact decision was possible (all polynomials quadratic or linear)
    pub conclusive: bool,
    pub samples_checked: usize,
    pub violations: Vec<ConcavityViolation>,
}

#[derive(Debug, Clone)]
pub struct ConcavityViolation {
    pub polynomial_index: usize,
    pub witness: Vec<Rat>,
    /// direction u with u^T H u > 0 at the witness point
    pub direction: Vec<Rat>,
}

fn hessian(f: &SparsePolynomial, vars: &[String]) -> Vec<Vec<SparsePolynomial>> {
    vars.iter()
        .map(|vi| {
            let di = f.derivative(vi);
            vars.iter().map(|vj| di.derivative(vj)).collect()
        })
        .collect()
}

fn hessian_at(h: &[Vec<SparsePolynomial>], vs: &crate::algebra::VarSet, pt: &[Rat]) -> Vec<Vec<Rat>> {
    h.iter()
        .map(|row| row.iter().map(|e| e.extend_vars(vs).eval(pt)).collect())
        .collect()
}

/// Determinant of a square rational matrix (fraction-free size is small).
fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::from_integer(1.into());
    }
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut sign = Rat::from_integer(1.into());
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Rat::zero(),
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let sub = &f * &a[k][j];
                a[i][j] = &a[i][j] - &sub;
            }
        }
    }
    let mut d = sign;
    for k in 0..n {
        d *= &a[k][k];
    }
    d
}

/// Is -H positive semidefinite? Checks all principal minors of -H.
fn neg_semidefinite(h: &[Vec<Rat>]) -> bool {
    let n = h.len();
    let neg: Vec<Vec<Rat>> = h
        .iter()
        .map(|row| row.iter().map(|v| -v.clone()).collect())
        .collect();
    // all principal minors (every index subset) must be >= 0
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| neg[i][j].clone()).collect())
            .collect();
        if det(&sub).is_negative() {
            return false;
        }
    }
    true
}

/// Find a rational direction with u^T H u > 0, if one exists (randomized).
fn positive_direction(h: &[Vec<Rat>], rng: &mut ChaCha8Rng) -> Option<Vec<Rat>> {
    let n = h.len();
    // try coordinate directions first
    for i in 0..n {
        if h[i][i].is_positive() {
            let mut u = vec![Rat::zero(); n];
            u[i] = Rat::from_integer(1.into());
            return Some(u);
        }
    }
    for _ in 0..200 {
        let u: Vec<Rat> = (0..n)
            .map(|_| Rat::new(rng.gen_range(-99i64..=99).into(), 10.into()))
            .collect();
        let mut q = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                q += &u[i] * &h[i][j] * &u[j];
            }
        }
        if q.is_positive() {
            return Some(u);
        }
    }
    None
}

/// Spot-check concavity of every body polynomial. Quadratics are decided
/// exactly; higher degrees are sampled at `samples` rational points of the
/// bounding box. A certified violation is reported as an error.
pub fn concavity_spot_check(
    body: &ConvexBodySpec,
    samples: usize,
    seed: u64,
) -> Result<ConcavityReport, GeometryError> {
    let vars = &body.variables;
    let vs = body.var_set();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut conclusive = true;
    let mut checked = 0usize;
    let bx = body.bounding_box.clone().unwrap_or_else(|| {
        vec![
            (Rat::from_integer((-2).into()), Rat::from_integer(2.into()));
            vars.len()
        ]
    });
    for (ix, f) in body.polynomials.iter().enumerate() {
        let h = hessian(f, vars);
        let constant_hessian = h
            .iter()
            .flatten()
            .all(|e| e.is_constant());
        if constant_hessian {
            let pt = vec![Rat::zero(); vars.len()];
            let hm = hessian_at(&h, &vs, &pt);
            checked += 1;
            if !neg_semidefinite(&hm) {
                let direction =
                    positive_direction(&hm, &mut rng).unwrap_or_default();
                let witness = vec![Rat::zero(); vars.len()];
                let report = ConcavityViolation {
                    polynomial_index: ix,
                    witness: witness.clone(),
                    direction,
                };
                let _ = report;
                return Err(GeometryError::NotConcave { witness });
            }
            continue;
        }
        conclusive = false;
        for _ in 0..samples {
            let pt: Vec<Rat> = bx
                .iter()
                .map(|(lo, hi)| {
                    let u: u32 = rng.gen_range(0..=1 << 12);
                    lo + (hi - lo) * Rat::new(u.into(), (1u32 << 12).into())
                })
                .collect();
            // map user order -> canonical order
            let mapped: Vec<Rat> = vs
                .names()
                .iter()
                .map(|n| {
                    let i = vars.iter().position(|v| v == n).unwrap();
                    pt[i].clone()
                })
                .collect();
            let hm = hessian_at(&h, &vs, &mapped);
            checked += 1;
            if !neg_semidefinite(&hm) {
                if positive_direction(&hm, &mut rng).is_some() {
                    return Err(GeometryError::NotConcave { witness: pt });
                }
            }
        }
    }
    Ok(ConcavityReport {
        conclusive,
        samples_checked: checked,
        violations: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, VarSet};

    fn body(polys: &[&str], vars: &[&str]) -> ConvexBodySpec {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let vs = VarSet::new(names.clone());
        let ps = polys
            .iter()
            .map(|s| parse_polynomial(s, &vs).unwrap())
            .collect();
        ConvexBodySpec::new(ps, names, None)
    }

    #[test]
    fn disk_is_concave_exact() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        let r = concavity_spot_check(&disk, 10, 1).unwrap();
        assert!(r.conclusive);
    }

    #[test]
    fn quartic_ball_sampled() {
        let b = body(&["1 - x^4 - y^4"], &["x", "y"]);
        let r = concavity_spot_check(&b, 50, 1).unwrap();
        assert!(!r.conclusive);
        assert!(r.samples_checked >= 50);
    }

    #[test]
    fn convex_parabola_rejected() {
        // y^2 - x is convex, not concave: Hessian has eigenvalue 2
        let b = body(&["y^2 - x"], &["x", "y"]);
        assert!(matches!(
            concavity_spot_check(&b, 10, 1),
            Err(GeometryError::NotConcave { .. })
        ));
    }
}
