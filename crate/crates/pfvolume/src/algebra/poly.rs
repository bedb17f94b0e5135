//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order with a fixed (sorted) variable order, so equality is
//! structural and printing is canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat_pow, Rat, RatInterval, UniPoly};

/// An ordered set of variable names shared by the terms of a polynomial.
///
/// Variable names are stored sorted, which fixes the global variable order
/// used by the graded lexicographic term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new(mut names: Vec<String>) -> Self {
        names.sort();
        names.dedup();
        VarSet(Arc::new(names))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Union of two variable sets (used to unify operands).
    pub fn union(&self, other: &VarSet) -> VarSet {
        if self == other {
            return self.clone();
        }
        let mut names: Vec<String> = self.0.iter().cloned().collect();
        names.extend(other.0.iter().cloned());
        VarSet::new(names)
    }
}

/// An exponent vector; ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise division; `None` if not divisible.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with rational coefficients.
///
/// Invariants: no zero coefficients are stored, every exponent vector has
/// length equal to the number of variables, and the term map is ordered by
/// the canonical graded lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rat>,
}

impl SparsePolynomial {
    pub fn zero(vars: VarSet) -> Self {
        SparsePolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        SparsePolynomial { vars, terms }
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, Rat::one())
    }

    /// The polynomial `name` as an element of `vars` (which must contain it).
    pub fn var(vars: VarSet, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("variable {name} not in variable set"));
        let mut expt = vec![0u32; vars.len()];
        expt[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(expt), Rat::one());
        SparsePolynomial { vars, terms }
    }

    pub fn from_terms(vars: VarSet, iter: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in iter {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        SparsePolynomial { vars, terms }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.index_of(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Smallest exponent of `var` over all terms (the variable content).
    pub fn min_exponent(&self, var: &str) -> u32 {
        match self.vars.index_of(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading term under the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Re-embed into a (super)set of variables.
    pub fn extend_vars(&self, vars: &VarSet) -> SparsePolynomial {
        if &self.vars == vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                vars.index_of(n)
                    .expect("extend_vars target must contain all variables")
            })
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; vars.len()];
            for (j, &exp) in m.0.iter().enumerate() {
                e[map[j]] = exp;
            }
            (Monomial(e), c.clone())
        });
        SparsePolynomial::from_terms(vars.clone(), terms)
    }

    /// Drop variables that no longer occur (used after substitution).
    pub fn shrink_vars(&self) -> SparsePolynomial {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self.clone();
        }
        let names: Vec<String> = self
            .vars
            .names()
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(n, _)| n.clone())
            .collect();
        let vars = VarSet::new(names);
        let terms = self.terms.iter().map(|(m, c)| {
            let e: Vec<u32> = m
                .0
                .iter()
                .zip(&used)
                .filter(|(_, &u)| u)
                .map(|(&x, _)| x)
                .collect();
            (Monomial(e), c.clone())
        });
        SparsePolynomial::from_terms(vars, terms)
    }

    fn unify(&self, other: &SparsePolynomial) -> (SparsePolynomial, SparsePolynomial) {
        if self.vars == other.vars {
            (self.clone(), other.clone())
        } else {
            let u = self.vars.union(&other.vars);
            (self.extend_vars(&u), other.extend_vars(&u))
        }
    }

    pub fn neg(&self) -> SparsePolynomial {
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let (a, b) = self.unify(other);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        SparsePolynomial {
            vars: a.vars,
            terms,
        }
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let (a, b) = self.unify(other);
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        // iterate over the smaller operand on the outside
        let (outer, inner) = if a.terms.len() <= b.terms.len() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        for (m1, c1) in &outer.terms {
            for (m2, c2) in &inner.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get() + &c;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        SparsePolynomial {
            vars: a.vars,
            terms,
        }
    }

    pub fn mul_scalar(&self, c: &Rat) -> SparsePolynomial {
        if c.is_zero() {
            return SparsePolynomial::zero(self.vars.clone());
        }
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rat) -> SparsePolynomial {
        if c.is_zero() {
            return SparsePolynomial::zero(self.vars.clone());
        }
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePolynomial {
        let mut acc = SparsePolynomial::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact formal partial derivative.
    pub fn derivative(&self, var: &str) -> SparsePolynomial {
        let i = match self.vars.index_of(var) {
            Some(i) => i,
            None => return SparsePolynomial::zero(self.vars.clone()),
        };
        let terms = self.terms.iter().filter_map(|(m, c)| {
            if m.0[i] == 0 {
                None
            } else {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                Some((Monomial(e), c * Rat::from(BigInt::from(k))))
            }
        });
        SparsePolynomial::from_terms(self.vars.clone(), terms.collect::<Vec<_>>())
    }

    /// Exact evaluation at a full rational point (in variable order).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= rat_pow(&point[i], e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Interval evaluation on a box of rational intervals (in variable order).
    pub fn eval_interval(&self, box_: &[RatInterval]) -> RatInterval {
        assert_eq!(box_.len(), self.vars.len());
        let mut acc = RatInterval::point(Rat::zero());
        for (m, c) in &self.terms {
            let mut t = RatInterval::point(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&box_[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute a rational value for one variable; the variable is removed
    /// from the result's variable set.
    pub fn substitute(&self, var: &str, value: &Rat) -> SparsePolynomial {
        let i = match self.vars.index_of(var) {
            Some(i) => i,
            None => return self.clone(),
        };
        let names: Vec<String> = self
            .vars
            .names()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, n)| n.clone())
            .collect();
        let vars = VarSet::new(names);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e.remove(i);
            (Monomial(e), c * rat_pow(value, k))
        });
        SparsePolynomial::from_terms(vars, terms.collect::<Vec<_>>())
    }

    /// View as a univariate polynomial in `var`: coefficient list indexed by
    /// the power of `var`, each coefficient a polynomial in the remaining
    /// variables.
    pub fn as_univariate_in(&self, var: &str) -> Vec<SparsePolynomial> {
        let i = self
            .vars
            .index_of(var)
            .unwrap_or_else(|| panic!("variable {var} not present"));
        let deg = self.degree_in(var) as usize;
        let names: Vec<String> = self
            .vars
            .names()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, n)| n.clone())
            .collect();
        let vars = VarSet::new(names);
        let mut buckets: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(i) as usize;
            buckets[k].push((Monomial(e), c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| SparsePolynomial::from_terms(vars.clone(), b))
            .collect()
    }

    /// Inverse of [`as_univariate_in`]: rebuild from coefficients in `var`.
    pub fn from_univariate_in(var: &str, coeffs: &[SparsePolynomial]) -> SparsePolynomial {
        assert!(!coeffs.is_empty());
        let mut vars = coeffs[0].vars.clone();
        for c in coeffs.iter().skip(1) {
            vars = vars.union(c.vars());
        }
        vars = vars.union(&VarSet::new(vec![var.to_string()]));
        let vi = vars.index_of(var).unwrap();
        let mut terms: Vec<(Monomial, Rat)> = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let c = c.extend_vars(&vars);
            for (m, v) in &c.terms {
                let mut e = m.0.clone();
                e[vi] += k as u32;
                terms.push((Monomial(e), v.clone()));
            }
        }
        SparsePolynomial::from_terms(vars, terms)
    }

    /// Convert a polynomial that involves at most one variable to a dense
    /// univariate polynomial. Panics if more than one variable occurs.
    pub fn to_unipoly(&self) -> UniPoly {
        let mut active: Option<usize> = None;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    match active {
                        None => active = Some(i),
                        Some(j) if j == i => {}
                        _ => panic!("to_unipoly: polynomial is not univariate"),
                    }
                }
            }
        }
        let i = match active {
            None => {
                return UniPoly::from_coeffs(vec![self
                    .as_constant()
                    .unwrap_or_else(Rat::zero)])
            }
            Some(i) => i,
        };
        let deg = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.0[i] as usize] = c.clone();
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Build a polynomial in a single named variable from a dense univariate.
    pub fn from_unipoly(p: &UniPoly, var: &str) -> SparsePolynomial {
        let vars = VarSet::new(vec![var.to_string()]);
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial(vec![k as u32]), c.clone()));
        SparsePolynomial::from_terms(vars, terms.collect::<Vec<_>>())
    }

    /// Rational content: gcd of coefficient numerators over lcm of
    /// denominators, signed so the leading coefficient of `self/content`
    /// is positive.
    pub fn content(&self) -> Rat {
        if self.terms.is_empty() {
            return Rat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    /// Divide by the rational content: integer coefficients with gcd one and
    /// a positive leading coefficient under the canonical order.
    pub fn primitive_part(&self) -> SparsePolynomial {
        if self.terms.is_empty() {
            return self.clone();
        }
        let c = self.content();
        self.mul_scalar(&c.recip())
    }

    /// Exact division; `None` if `self` is not a polynomial multiple of `div`.
    pub fn exact_div(&self, div: &SparsePolynomial) -> Option<SparsePolynomial> {
        if div.is_zero() {
            return None;
        }
        if let Some(c) = div.as_constant() {
            return Some(self.mul_scalar(&c.recip()));
        }
        let (mut rem, d) = self.unify(div);
        let vars = rem.vars.clone();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut q_terms: Vec<(Monomial, Rat)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
            q_terms.push((qm, qc));
        }
        Some(SparsePolynomial::from_terms(vars, q_terms))
    }

    /// Largest `k` with `div^k` dividing `self`, together with the cofactor.
    pub fn remove_factor(&self, div: &SparsePolynomial) -> (u32, SparsePolynomial) {
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            match cur.exact_div(div) {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => return (k, cur),
            }
        }
    }

    /// Evaluate with f64 arithmetic (fast, uncertified).
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Gradient with f64 arithmetic (uncertified).
    pub fn gradient_f64(&self, point: &[f64]) -> Vec<f64> {
        self.vars
            .names()
            .iter()
            .map(|v| self.derivative(v).eval_f64(point))
            .collect()
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    // num's to_f64 on Ratio can overflow intermediates; go through a scaled
    // integer quotient instead.
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = 80 - (nb - db);
    let scaled = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mut x = 0.0f64;
    for (i, digit) in scaled.iter_u64_digits().enumerate() {
        x += (digit as f64) * 2f64.powi(64 * i as i32);
    }
    if num.is_negative() {
        x = -x;
    }
    x * 2f64.powi(-shift as i32)
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::print_polynomial(self))
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::print_polynomial(self))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_polynomial, rat, rat_int};
    use super::*;

    fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
        let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
        parse_polynomial(src, &vs).unwrap()
    }

    #[test]
    fn add_cancellation() {
        let a = p("x+y", &["x", "y"]);
        let b = p("x-y", &["x", "y"]);
        assert_eq!(a.add(&b), p("2*x", &["x", "y"]));
    }

    #[test]
    fn product_expansion() {
        let a = p("1-x^2", &["x", "y"]);
        let b = p("1-y^2", &["x", "y"]);
        assert_eq!(a.mul(&b), p("1 - x^2 - y^2 + x^2*y^2", &["x", "y"]));
    }

    #[test]
    fn big_product_point_evaluation_oracle() {
        // 25-term expansion checked by evaluating both sides at (1/7, 2/5).
        let a = p("1 - x^4 - y^4", &["x", "y"]);
        let b = p("1 - (x-1/2)^4 - (y-1/3)^4", &["x", "y"]);
        let prod = a.mul(&b);
        // 27 pairwise products with three monomial collisions (x^4, y^4, x^4y^4)
        assert_eq!(prod.num_terms(), 24);
        let pt = vec![rat(1, 7), rat(2, 5)];
        assert_eq!(prod.eval(&pt), a.eval(&pt) * b.eval(&pt));
    }

    #[test]
    fn derivative_basics() {
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        assert_eq!(f.derivative("x"), p("-2*x", &["x", "y"]));
        let g = p("1 - x^4 - y^4", &["x", "y"]);
        assert_eq!(g.derivative("x"), p("-4*x^3", &["x", "y"]));
    }

    #[test]
    fn derivative_finite_difference_oracle() {
        // Central difference with exact step h = 1/2^10 applied to a cubic in y
        // recovers the derivative exactly up to the h^2 term; compare against
        // the forward/backward average with the exact correction instead:
        // for polynomials, (f(x, y+h) - f(x, y-h)) / (2h) equals
        // f_y + f_yyy h^2/6 + ...; evaluate both sides symbolically.
        let f = p("(1-x^4-y^4)*(1-(x-1/2)^4-(y-1/3)^4)", &["x", "y"]);
        let h = rat(1, 1024);
        let x0 = rat(3, 11);
        let y0 = rat(-2, 9);
        let fy = f.derivative("y");
        let plus = f.eval(&[x0.clone(), &y0 + &h]);
        let minus = f.eval(&[x0.clone(), &y0 - &h]);
        let central = (plus - minus) / (rat_int(2) * &h);
        // exact Taylor remainder: sum of odd derivatives
        let mut expect = fy.eval(&[x0.clone(), y0.clone()]);
        let mut dk = fy.clone();
        let mut fact = rat_int(1);
        let mut hk = rat_int(1);
        for k in 1..8u32 {
            dk = dk.derivative("y").derivative("y");
            fact *= rat_int((2 * k) as i64) * rat_int((2 * k + 1) as i64);
            hk *= &h * &h;
            expect += dk.eval(&[x0.clone(), y0.clone()]) * &hk / &fact;
        }
        assert_eq!(central, expect);
    }

    #[test]
    fn exact_div_roundtrip() {
        let a = p("(1-x-y)*(x-y+1)", &["x", "y"]);
        let b = p("1-x-y", &["x", "y"]);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, p("x-y+1", &["x", "y"]));
        assert!(p("x^2+y", &["x", "y"]).exact_div(&b).is_none());
    }

    #[test]
    fn univariate_roundtrip() {
        let f = p("x^2*y + 3*x - y^3 + 2", &["x", "y"]);
        let coeffs = f.as_univariate_in("x");
        assert_eq!(coeffs.len(), 3);
        let back = SparsePolynomial::from_univariate_in("x", &coeffs);
        assert_eq!(back, f);
    }

    #[test]
    fn ring_axioms_random() {
        // associativity and distributivity on a few fixed triples
        let f = p("x^2 - 3*y + 1/2", &["x", "y"]);
        let g = p("y^2*x - 7", &["x", "y"]);
        let h = p("x*y - x + 5/3*y", &["x", "y"]);
        assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
    }

    #[test]
    fn var_unification() {
        let f = p("x + 1", &["x"]);
        let g = p("y + 1", &["y"]);
        let s = f.add(&g);
        assert_eq!(s, p("x + y + 2", &["x", "y"]));
    }
}
