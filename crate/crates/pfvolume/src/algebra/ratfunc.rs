//! Rational functions in several variables, kept in lowest terms with a
//! content-normalized denominator (integer-primitive, positive leading
//! coefficient in the canonical term order).

use num_traits::Signed;

use super::gcd::{gcd_with_small, poly_gcd};
use super::poly::{SparsePolynomial, VarSet};
use super::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct ParamRationalFunction {
    num: SparsePolynomial,
    den: SparsePolynomial,
}

impl ParamRationalFunction {
    /// General constructor: reduces by the full polynomial gcd.
    pub fn new(num: SparsePolynomial, den: SparsePolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let vars = num.vars().union(den.vars());
            return ParamRationalFunction {
                num: SparsePolynomial::zero(vars.clone()),
                den: SparsePolynomial::one(vars),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).unwrap(),
                den.exact_div(&g).unwrap(),
            )
        };
        Self::normalize(num, den)
    }

    /// Constructor for `num / base^power` with `base` square-free: reduces
    /// against `base` factor by factor instead of building the gcd with the
    /// expanded power.
    pub fn with_power_denominator(
        num: SparsePolynomial,
        base: &SparsePolynomial,
        power: u32,
    ) -> Self {
        assert!(!base.is_zero());
        if num.is_zero() || power == 0 {
            return Self::new(num, SparsePolynomial::one(base.vars().clone()));
        }
        let mut c = num;
        let mut removed = SparsePolynomial::one(base.vars().clone());
        let mut steps = 0;
        while steps < power {
            let g = gcd_with_small(&c, base);
            if g.is_constant() {
                break;
            }
            c = c.exact_div(&g).unwrap();
            removed = removed.mul(&g);
            steps += 1;
        }
        let den = if removed.is_constant() {
            base.pow(power)
        } else {
            base.pow(power)
                .exact_div(&removed)
                .expect("removed factor divides the power")
        };
        Self::normalize(c, den)
    }

    fn normalize(num: SparsePolynomial, den: SparsePolynomial) -> Self {
        let c = den.content();
        let den = den.mul_scalar(&c.recip());
        let num = num.mul_scalar(&c.recip());
        ParamRationalFunction { num, den }
    }

    pub fn from_poly(p: SparsePolynomial) -> Self {
        let one = SparsePolynomial::one(p.vars().clone());
        ParamRationalFunction { num: p, den: one }
    }

    pub fn zero(vars: VarSet) -> Self {
        Self::from_poly(SparsePolynomial::zero(vars))
    }

    pub fn numerator(&self) -> &SparsePolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &SparsePolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn vars(&self) -> VarSet {
        self.num.vars().union(self.den.vars())
    }

    pub fn neg(&self) -> Self {
        ParamRationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_poly(&self, p: &SparsePolynomial) -> Self {
        Self::new(self.num.mul(p), self.den.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    /// Exact partial derivative (quotient rule, reduced).
    pub fn derivative(&self, var: &str) -> Self {
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Self::new(num, den)
    }

    /// Exact evaluation; `None` when the denominator vanishes at the point.
    pub fn eval(&self, vars: &VarSet, point: &[Rat]) -> Option<Rat> {
        let num = self.num.extend_vars(vars).eval(point);
        let den = self.den.extend_vars(vars).eval(point);
        if den == Rat::from_integer(0.into()) {
            None
        } else {
            Some(num / den)
        }
    }

    /// True when the denominator (in lowest terms) divides `base^k` for some
    /// k, i.e. the rational function has no poles outside `base`.
    pub fn poles_within(&self, base: &SparsePolynomial) -> bool {
        let mut d = self.den.primitive_part();
        if d.is_constant() {
            return true;
        }
        loop {
            let g = poly_gcd(&d, base);
            if g.is_constant() {
                return d.is_constant();
            }
            d = d.exact_div(&g).unwrap().primitive_part();
            if d.is_constant() {
                return true;
            }
        }
    }
}

impl std::fmt::Display for ParamRationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_constant() {
            let c = self.den.as_constant().unwrap();
            if c == Rat::from_integer(1.into()) {
                return write!(f, "{}", self.num);
            }
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

// positive-denominator invariant check for debug builds
impl ParamRationalFunction {
    #[cfg(debug_assertions)]
    pub(crate) fn check_normalized(&self) {
        if let Some((_, c)) = self.den.leading() {
            debug_assert!(c.is_positive(), "denominator leading coefficient positive");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_polynomial, rat, VarSet};
    use super::*;

    fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
        let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
        parse_polynomial(src, &vs).unwrap()
    }

    #[test]
    fn reduction() {
        let num = p("(x+y)*(x-y)", &["x", "y"]);
        let den = p("(x+y)*2", &["x", "y"]);
        let r = ParamRationalFunction::new(num, den);
        assert_eq!(r.numerator(), &p("1/2*x - 1/2*y", &["x", "y"]));
        assert!(r.denominator().is_constant());
    }

    #[test]
    fn derivative_geometric() {
        // d/dx 1/(1-x) = 1/(1-x)^2
        let one = p("1", &["x"]);
        let den = p("1-x", &["x"]);
        let a = ParamRationalFunction::new(one, den.clone());
        let d = a.derivative("x");
        assert_eq!(d.numerator(), &p("1", &["x"]));
        assert_eq!(d.denominator(), &den.mul(&den));
    }

    #[test]
    fn pole_check() {
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let a = ParamRationalFunction::with_power_denominator(p("-2*x^2", &["x", "y"]), &f, 1);
        assert!(a.poles_within(&f));
        let spurious =
            ParamRationalFunction::new(p("x", &["x", "y"]), f.mul(&p("x + y - 2", &["x", "y"])));
        assert!(!spurious.poles_within(&f));
    }

    #[test]
    fn eval_exact() {
        let vars = VarSet::new(vec!["x".into(), "y".into()]);
        let a = ParamRationalFunction::new(p("x", &["x", "y"]), p("1 - y", &["x", "y"]));
        assert_eq!(a.eval(&vars, &[rat(1, 2), rat(1, 3)]), Some(rat(3, 4)));
        assert_eq!(a.eval(&vars, &[rat(1, 2), rat(1, 1)]), None);
    }
}
