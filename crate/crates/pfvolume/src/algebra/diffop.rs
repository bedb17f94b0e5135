//! Univariate linear differential operators with polynomial coefficients.
//!
//! An operator is `sum_i p_i(v) D^i` where `D` differentiates with respect to
//! the single variable `v`. The degree convention matches leading-coefficient
//! degree (operators are stored with denominator one).

use serde::{Deserialize, Serialize};

use super::parse::{parse_polynomial, print_polynomial, ParseError};
use super::poly::{SparsePolynomial, VarSet};
use super::ratfunc::ParamRationalFunction;
use super::{Rat, UniPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialOperator {
    var: String,
    /// coefficient of D^i at index i; the leading entry is nonzero
    coeffs: Vec<SparsePolynomial>,
}

impl DifferentialOperator {
    pub fn new(var: &str, mut coeffs: Vec<SparsePolynomial>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "zero operator");
        for c in &coeffs {
            for name in c.vars().names() {
                assert!(
                    name == var || c.degree_in(name) == 0,
                    "operator coefficients must be univariate in {var}"
                );
            }
        }
        DifferentialOperator {
            var: var.to_string(),
            coeffs,
        }
    }

    /// The derivation operator `D` in the given variable.
    pub fn derivation(var: &str) -> Self {
        let vars = VarSet::new(vec![var.to_string()]);
        DifferentialOperator::new(
            var,
            vec![SparsePolynomial::zero(vars.clone()), SparsePolynomial::one(vars)],
        )
    }

    pub fn variable(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree of the leading coefficient (denominator-one convention).
    pub fn degree(&self) -> u32 {
        self.coeffs.last().unwrap().degree_in(&self.var)
    }

    pub fn coefficients(&self) -> &[SparsePolynomial] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> &SparsePolynomial {
        self.coeffs.last().unwrap()
    }

    /// Coefficients as dense univariate polynomials.
    pub fn coeffs_unipoly(&self) -> Vec<UniPoly> {
        self.coeffs.iter().map(|c| c.to_unipoly()).collect()
    }

    pub fn from_unipoly_coeffs(var: &str, coeffs: &[UniPoly]) -> Self {
        DifferentialOperator::new(
            var,
            coeffs
                .iter()
                .map(|c| SparsePolynomial::from_unipoly(c, var))
                .collect(),
        )
    }

    /// Compose with the derivation on the right: `(P D) . y = P . y'`.
    pub fn right_mul_derivation(&self) -> Self {
        let vars = self.coeffs[0].vars().clone();
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(SparsePolynomial::zero(vars));
        coeffs.extend(self.coeffs.iter().cloned());
        DifferentialOperator {
            var: self.var.clone(),
            coeffs,
        }
    }

    /// Multiply all coefficients by a polynomial in the operator variable.
    pub fn scale_poly(&self, p: &SparsePolynomial) -> Self {
        DifferentialOperator::new(
            &self.var,
            self.coeffs.iter().map(|c| c.mul(p)).collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        DifferentialOperator::new(
            &self.var,
            self.coeffs.iter().map(|q| q.mul_scalar(c)).collect(),
        )
    }

    /// Exact action on a rational function.
    pub fn apply(&self, a: &ParamRationalFunction) -> ParamRationalFunction {
        let mut acc = ParamRationalFunction::zero(a.vars());
        let mut deriv = a.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                deriv = deriv.derivative(&self.var);
            }
            if !c.is_zero() {
                acc = acc.add(&deriv.mul_poly(c));
            }
        }
        acc
    }

    /// Exact action on a polynomial.
    pub fn apply_poly(&self, f: &SparsePolynomial) -> SparsePolynomial {
        let mut acc = SparsePolynomial::zero(f.vars().clone());
        let mut deriv = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                deriv = deriv.derivative(&self.var);
            }
            if !c.is_zero() {
                acc = acc.add(&deriv.mul(c));
            }
        }
        acc
    }

    /// Canonical text form `p_r(v)*D^r + ... + p_0(v)`.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let poly = print_polynomial(c);
            let part = match i {
                0 => format!("({poly})"),
                1 => format!("({poly})*D"),
                _ => format!("({poly})*D^{i}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    /// Parse the text form produced by [`to_text`].
    pub fn from_text(var: &str, src: &str) -> Result<Self, ParseError> {
        let vars = VarSet::new(vec![var.to_string()]);
        // split into top-level terms on '+'
        let mut terms: Vec<(usize, String)> = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        for ch in src.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' if depth == 0 => {
                    terms.push((0, std::mem::take(&mut cur)));
                }
                _ => cur.push(ch),
            }
        }
        terms.push((0, cur));
        let mut order = 0usize;
        let mut parsed: Vec<(usize, SparsePolynomial)> = Vec::new();
        for (_, t) in terms {
            let t = t.trim();
            let (poly_src, d) = if let Some(idx) = t.rfind("*D^") {
                let pow: usize = t[idx + 3..]
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::BadExponent)?;
                (&t[..idx], pow)
            } else if let Some(stripped) = t.strip_suffix("*D") {
                (stripped, 1)
            } else {
                (t, 0)
            };
            let p = parse_polynomial(poly_src, &vars)?;
            order = order.max(d);
            parsed.push((d, p));
        }
        let mut coeffs = vec![SparsePolynomial::zero(vars.clone()); order + 1];
        for (d, p) in parsed {
            coeffs[d] = coeffs[d].add(&p);
        }
        Ok(DifferentialOperator::new(var, coeffs))
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson {
            variable: self.var.clone(),
            order: self.order(),
            coefficients: self
                .coeffs
                .iter()
                .map(|c| {
                    let u = c.to_unipoly();
                    u.coeffs()
                        .iter()
                        .map(|q| format!("{}/{}", q.numer(), q.denom()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &OperatorJson) -> Self {
        let coeffs: Vec<UniPoly> = j
            .coefficients
            .iter()
            .map(|cs| {
                UniPoly::from_coeffs(
                    cs.iter()
                        .map(|s| {
                            let (n, d) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                            Rat::new(n.parse().unwrap(), d.parse().unwrap())
                        })
                        .collect(),
                )
            })
            .collect();
        DifferentialOperator::from_unipoly_coeffs(&j.variable, &coeffs)
    }
}

/// JSON form of an operator: coefficient arrays of exact rational strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OperatorJson {
    pub variable: String,
    pub order: usize,
    pub coefficients: Vec<Vec<String>>,
}

impl std::fmt::Display for DifferentialOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_polynomial, rat};
    use super::*;

    fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
        let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
        parse_polynomial(src, &vs).unwrap()
    }

    #[test]
    fn apply_geometric() {
        // D . 1/(1-x) = 1/(1-x)^2
        let d = DifferentialOperator::derivation("x");
        let a = ParamRationalFunction::new(p("1", &["x"]), p("1-x", &["x"]));
        let r = d.apply(&a);
        assert_eq!(r.numerator(), &p("1", &["x"]));
        assert_eq!(r.denominator(), &p("(1-x)^2", &["x"]));
    }

    #[test]
    fn kernel_membership() {
        // (x D - 1) . x = 0
        let op = DifferentialOperator::new("x", vec![p("-1", &["x"]), p("x", &["x"])]);
        let r = op.apply(&ParamRationalFunction::from_poly(p("x", &["x"])));
        assert!(r.is_zero());
    }

    #[test]
    fn slice_integrand_pole_growth() {
        // A = -2x^2 / (1 - x^2 - y^2); applying an order-1 operator in y
        // produces denominator (1 - x^2 - y^2)^2
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let a = ParamRationalFunction::new(p("-2*x^2", &["x", "y"]), f.clone());
        let op = DifferentialOperator::new(
            "y",
            vec![p("y", &["y"]), p("1 - y^2", &["y"])],
        );
        let r = op.apply(&a);
        assert_eq!(r.denominator(), &f.mul(&f));
    }

    #[test]
    fn linearity() {
        let op = DifferentialOperator::new("x", vec![p("3", &["x"]), p("x^2", &["x"])]);
        let a = ParamRationalFunction::new(p("x", &["x", "y"]), p("1-y", &["x", "y"]));
        let b = ParamRationalFunction::new(p("y", &["x", "y"]), p("1-x", &["x", "y"]));
        let lhs = op.apply(&a.add(&b));
        let rhs = op.apply(&a).add(&op.apply(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_roundtrip() {
        let op = DifferentialOperator::new(
            "t",
            vec![p("t^2 - 1/3", &["t"]), p("-2*t", &["t"]), p("1 - t^2", &["t"])],
        );
        let text = op.to_text();
        let back = DifferentialOperator::from_text("t", &text).unwrap();
        assert_eq!(op, back);
    }

    #[test]
    fn json_roundtrip() {
        let op = DifferentialOperator::new(
            "t",
            vec![p("t", &["t"]), p("1 - t^2", &["t"])],
        );
        let j = op.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let j2: OperatorJson = serde_json::from_str(&s).unwrap();
        assert_eq!(DifferentialOperator::from_json(&j2), op);
        let _ = rat(1, 2);
    }

    #[test]
    fn right_derivation() {
        // (D^2) from D by right multiplication; solutions 1, t
        let d = DifferentialOperator::derivation("t");
        let d2 = d.right_mul_derivation();
        assert_eq!(d2.order(), 2);
        let r = d2.apply_poly(&p("t", &["t"]));
        assert!(r.is_zero());
    }
}
