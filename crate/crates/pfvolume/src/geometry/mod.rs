//! Body specification, deformation, critical ideals and relevant
//! critical-value selection, membership tests and the projection-variable
//! heuristic.

mod concavity;
mod critical;
mod eliminate;
mod interior;
mod projvar;

pub use concavity::{concavity_spot_check, ConcavityReport};
pub use critical::{relevant_critical_values, CaseUsed, CriticalValueResult};
pub use eliminate::critical_eliminant;
pub use interior::{find_interior_point, slice_feasible_point};
pub use projvar::projection_variable;

use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{rat_pow, Rat, SparsePolynomial, VarSet};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("no interior point of the deformed body was found")]
    EmptyBody,
    #[error("critical-value selection could not be certified: {0}")]
    AmbiguousSelection(String),
    #[error("elimination collapsed (shared factors / positive-dimensional locus)")]
    EliminationCollapse,
    #[error("input polynomial is not concave: witness point {witness:?}")]
    NotConcave { witness: Vec<Rat> },
    #[error("deformation value must be positive, got {0}")]
    NonPositiveDeformation(Rat),
}

/// A convex body given by the common positivity locus of concave polynomials
/// with rational coefficients.
#[derive(Debug, Clone)]
pub struct ConvexBodySpec {
    /// defining polynomials, all over the same variables
    pub polynomials: Vec<SparsePolynomial>,
    /// variables in user-declared order (ties in heuristics break by this)
    pub variables: Vec<String>,
    /// optional per-variable bounding box in `variables` order
    pub bounding_box: Option<Vec<(Rat, Rat)>>,
}

impl ConvexBodySpec {
    pub fn new(
        polynomials: Vec<SparsePolynomial>,
        variables: Vec<String>,
        bounding_box: Option<Vec<(Rat, Rat)>>,
    ) -> Self {
        assert!(!polynomials.is_empty(), "body needs at least one polynomial");
        let vars = VarSet::new(variables.clone());
        let polynomials = polynomials
            .into_iter()
            .map(|p| p.extend_vars(&vars.union(p.vars())))
            .collect();
        ConvexBodySpec {
            polynomials,
            variables,
            bounding_box,
        }
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn var_set(&self) -> VarSet {
        VarSet::new(self.variables.clone())
    }

    /// The product of the defining polynomials.
    pub fn product(&self) -> SparsePolynomial {
        let mut acc = SparsePolynomial::one(self.var_set());
        for f in &self.polynomials {
            acc = acc.mul(f);
        }
        acc
    }

    /// Restrict the body to the hyperplane `var = value`.
    pub fn restrict(&self, var: &str, value: &Rat) -> ConvexBodySpec {
        let variables: Vec<String> = self
            .variables
            .iter()
            .filter(|v| v.as_str() != var)
            .cloned()
            .collect();
        let polynomials = self
            .polynomials
            .iter()
            .map(|f| f.substitute(var, value))
            .collect();
        let bounding_box = self.bounding_box.as_ref().map(|bx| {
            self.variables
                .iter()
                .zip(bx)
                .filter(|(v, _)| v.as_str() != var)
                .map(|(_, b)| b.clone())
                .collect()
        });
        ConvexBodySpec {
            polynomials,
            variables,
            bounding_box,
        }
    }

    /// Point in `variables` order.
    pub fn eval_all(&self, point: &[Rat]) -> Vec<Rat> {
        // polynomials store canonically sorted variables; map the point
        let vs = self.var_set();
        let mapped: Vec<Rat> = vs
            .names()
            .iter()
            .map(|n| {
                let i = self.variables.iter().position(|v| v == n).unwrap();
                point[i].clone()
            })
            .collect();
        self.polynomials
            .iter()
            .map(|f| f.extend_vars(&vs).eval(&mapped))
            .collect()
    }
}

/// Deformation value: a positive rational or the formal parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum TValue {
    Numeric(Rat),
    Symbolic(String),
}

/// The deformed product `F_t = f_1 ... f_k - t`.
#[derive(Debug, Clone)]
pub struct DeformedProduct {
    pub t_value: TValue,
    pub polynomial: SparsePolynomial,
}

/// Build the deformed product for a numeric or symbolic deformation value.
pub fn deform(body: &ConvexBodySpec, t: TValue) -> DeformedProduct {
    let prod = body.product();
    let polynomial = match &t {
        TValue::Numeric(q) => {
            assert!(!q.is_negative(), "deformation value must be nonnegative");
            prod.sub(&SparsePolynomial::constant(prod.vars().clone(), q.clone()))
        }
        TValue::Symbolic(name) => {
            let vars = prod.vars().union(&VarSet::new(vec![name.clone()]));
            prod.extend_vars(&vars)
                .sub(&SparsePolynomial::var(vars, name))
        }
    };
    DeformedProduct {
        t_value: t,
        polynomial,
    }
}

/// Exact membership test for the deformed body: all f_i > 0 and prod f > t.
pub fn contains(body: &ConvexBodySpec, t: &Rat, point: &[Rat]) -> bool {
    assert_eq!(point.len(), body.dimension());
    let values = body.eval_all(point);
    if values.iter().any(|v| !v.is_positive()) {
        return false;
    }
    let mut prod = Rat::from_integer(1.into());
    for v in &values {
        prod *= v;
    }
    prod > *t
}

pub(crate) fn rat_product(values: &[Rat]) -> Rat {
    let mut prod = Rat::from_integer(1.into());
    for v in values {
        prod *= v;
    }
    prod
}

pub(crate) fn _unused_rat_pow(base: &Rat, e: u32) -> Rat {
    rat_pow(base, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    pub(crate) fn body(polys: &[&str], vars: &[&str]) -> ConvexBodySpec {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let vs = VarSet::new(names.clone());
        let ps = polys
            .iter()
            .map(|s| parse_polynomial(s, &vs).unwrap())
            .collect();
        ConvexBodySpec::new(ps, names, None)
    }

    #[test]
    fn deform_examples() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        let d = deform(&disk, TValue::Numeric(rat(1, 4)));
        let vs = VarSet::new(vec!["x".into(), "y".into()]);
        assert_eq!(
            d.polynomial,
            parse_polynomial("3/4 - x^2 - y^2", &vs).unwrap()
        );

        let two_l4 = body(
            &["1 - x^4 - y^4", "1 - (x - 1/2)^4 - (y - 1/3)^4"],
            &["x", "y"],
        );
        let d2 = deform(&two_l4, TValue::Symbolic("t".into()));
        let vs3 = VarSet::new(vec!["t".into(), "x".into(), "y".into()]);
        let expect =
            parse_polynomial("(1-x^4-y^4)*(1-(x-1/2)^4-(y-1/3)^4) - t", &vs3).unwrap();
        assert_eq!(d2.polynomial, expect);

        // t = 0 recovers the plain product
        let d0 = deform(&disk, TValue::Numeric(rat(0, 1)));
        assert_eq!(d0.polynomial, disk.product());
    }

    #[test]
    fn membership() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        assert!(contains(&disk, &rat(0, 1), &[rat(0, 1), rat(0, 1)]));
        assert!(!contains(&disk, &rat(0, 1), &[rat(1, 1), rat(1, 1)]));
        let two_l4 = body(
            &["1 - x^4 - y^4", "1 - (x - 1/2)^4 - (y - 1/3)^4"],
            &["x", "y"],
        );
        // exact rational evaluation decides the deformed membership
        let inside = contains(&two_l4, &rat(3, 10), &[rat(1, 4), rat(1, 6)]);
        let f1 = rat(1, 1) - rat_pow(&rat(1, 4), 4) - rat_pow(&rat(1, 6), 4);
        let f2 = rat(1, 1) - rat_pow(&(rat(1, 4) - rat(1, 2)), 4)
            - rat_pow(&(rat(1, 6) - rat(1, 3)), 4);
        assert_eq!(inside, &f1 * &f2 > rat(3, 10));
    }

    #[test]
    fn restriction() {
        let tetra = body(
            &["x", "y", "z", "1/3 - x - y - z"],
            &["x", "y", "z"],
        );
        let slice = tetra.restrict("z", &rat(1, 12));
        assert_eq!(slice.dimension(), 2);
        assert_eq!(slice.polynomials.len(), 4);
        // the z polynomial became the constant 1/12
        assert!(slice
            .polynomials
            .iter()
            .any(|p| p.as_constant() == Some(rat(1, 12))));
    }
}
