//! Dense univariate polynomials over a field.
//!
//! `FieldPoly<K>` is generic so the same division/gcd/Bezout code serves both
//! Q (root isolation, indicial polynomials) and Q(v) (Hermite reduction).
//! `UniPoly` is the rational specialization with integer fast paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rat, RatInterval};

/// Minimal field interface for polynomial coefficient domains. Method names
/// carry an `f_` prefix to stay clear of `num_traits` and inherent methods.
pub trait FieldOps: Clone + PartialEq + std::fmt::Debug {
    fn f_zero() -> Self;
    fn f_one() -> Self;
    fn f_is_zero(&self) -> bool;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    fn f_neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn f_inv(&self) -> Self;
}

impl FieldOps for Rat {
    fn f_zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn f_one() -> Self {
        <Rat as One>::one()
    }
    fn f_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_inv(&self) -> Self {
        self.recip()
    }
}

/// Dense univariate polynomial; the coefficient of degree `i` is `c[i]`,
/// and the leading coefficient is nonzero (empty vector = zero polynomial).
#[derive(Clone, PartialEq, Debug)]
pub struct FieldPoly<K> {
    c: Vec<K>,
}

pub type UniPoly = FieldPoly<Rat>;

impl<K: FieldOps> FieldPoly<K> {
    pub fn zero() -> Self {
        FieldPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        FieldPoly {
            c: vec![K::f_one()],
        }
    }

    pub fn constant(k: K) -> Self {
        if k.f_is_zero() {
            Self::zero()
        } else {
            FieldPoly { c: vec![k] }
        }
    }

    pub fn x() -> Self {
        FieldPoly {
            c: vec![K::f_zero(), K::f_one()],
        }
    }

    pub fn from_coeffs(mut c: Vec<K>) -> Self {
        while c.last().map(|k| k.f_is_zero()).unwrap_or(false) {
            c.pop();
        }
        FieldPoly { c }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(K::f_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> K {
        self.c.last().cloned().unwrap_or_else(K::f_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).f_add(&o.coeff(i)));
        }
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).f_sub(&o.coeff(i)));
        }
        Self::from_coeffs(c)
    }

    pub fn neg(&self) -> Self {
        FieldPoly {
            c: self.c.iter().map(|k| k.f_neg()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![K::f_zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.f_is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].f_add(&a.f_mul(b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn mul_scalar(&self, k: &K) -> Self {
        if k.f_is_zero() {
            return Self::zero();
        }
        FieldPoly {
            c: self.c.iter().map(|a| a.f_mul(k)).collect(),
        }
    }

    /// Multiply by x^n.
    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![K::f_zero(); n];
        c.extend(self.c.iter().cloned());
        FieldPoly { c }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.c.len() - 1);
        for (i, a) in self.c.iter().enumerate().skip(1) {
            // i * a via binary doubling, staying inside the field interface
            let mut m = K::f_zero();
            let mut add = a.clone();
            let mut k = i;
            while k > 0 {
                if k & 1 == 1 {
                    m = m.f_add(&add);
                }
                k >>= 1;
                if k > 0 {
                    add = add.f_add(&add);
                }
            }
            c.push(m);
        }
        Self::from_coeffs(c)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::f_zero();
        for a in self.c.iter().rev() {
            acc = acc.f_mul(x).f_add(a);
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < d.deg() {
            return (Self::zero(), self.clone());
        }
        let dl_inv = d.leading().f_inv();
        let mut rem = self.c.clone();
        let dd = d.deg();
        let mut q = vec![K::f_zero(); self.deg() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].f_is_zero() {
                continue;
            }
            let f = rem[i].f_mul(&dl_inv);
            q[i - dd] = f.clone();
            for (j, b) in d.c.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].f_sub(&f.f_mul(b));
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.leading().f_inv();
            a.mul_scalar(&l)
        }
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn extended_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = o.clone();
        let mut s0 = Self::one();
        let mut s1 = Self::zero();
        let mut t0 = Self::zero();
        let mut t1 = Self::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            (r0, s0, t0)
        } else {
            let l = r0.leading().f_inv();
            (r0.mul_scalar(&l), s0.mul_scalar(&l), t0.mul_scalar(&l))
        }
    }

    /// Exact division; panics if the division is not exact.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "exact_div: division not exact");
        q
    }

    /// Square-free part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.deg() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            self.clone()
        } else {
            self.exact_div(&g)
        }
    }

    /// Substitute x -> x + a (Taylor shift) using Horner.
    pub fn taylor_shift(&self, a: &K) -> Self {
        let mut out = Self::zero();
        let shift = Self::from_coeffs(vec![a.clone(), K::f_one()]);
        for c in self.c.iter().rev() {
            out = out.mul(&shift).add(&Self::constant(c.clone()));
        }
        out
    }

    /// Substitute x -> a*x.
    pub fn scale(&self, a: &K) -> Self {
        let mut c = Vec::with_capacity(self.c.len());
        let mut pw = K::f_one();
        for coeff in &self.c {
            c.push(coeff.f_mul(&pw));
            pw = pw.f_mul(a);
        }
        Self::from_coeffs(c)
    }

    /// Reverse coefficients: x^deg * p(1/x).
    pub fn reverse(&self) -> Self {
        let mut c: Vec<K> = self.c.iter().rev().cloned().collect();
        while c.last().map(|k| k.f_is_zero()).unwrap_or(false) {
            c.pop();
        }
        FieldPoly { c }
    }
}

impl UniPoly {
    /// Clear denominators and the integer content; keep the sign of the
    /// leading coefficient.
    pub fn to_int_primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| a.numer() * (&den / a.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if g.is_zero() {
            return ints;
        }
        ints.iter().map(|v| v / &g).collect()
    }

    pub fn from_int(c: &[BigInt]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|v| Rat::from_integer(v.clone())).collect())
    }

    /// Make the polynomial integer-primitive with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        let mut ints = self.to_int_primitive();
        if ints.last().map(|v| v.is_negative()).unwrap_or(false) {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
        UniPoly::from_int(&ints)
    }

    /// Interval evaluation over exact rational intervals.
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(<Rat as Zero>::zero());
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&RatInterval::point(a.clone()));
        }
        acc
    }

    /// Root magnitude upper bound (Cauchy): 1 + max |a_i| / |a_n|.
    pub fn cauchy_root_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lead = self.leading();
        let mut m = <Rat as Zero>::zero();
        for a in &self.c[..self.c.len() - 1] {
            let v = (a / &lead).abs();
            if v > m {
                m = v;
            }
        }
        m + <Rat as One>::one()
    }

    /// Lower bound on the magnitude of nonzero roots:
    /// |a_0| / (|a_0| + max_{i>=1} |a_i|), valid when a_0 != 0.
    pub fn root_magnitude_lower_bound(&self) -> Rat {
        assert!(!self.is_zero() && !Zero::is_zero(&self.c[0]));
        let a0 = self.c[0].abs();
        let mut m = <Rat as Zero>::zero();
        for a in &self.c[1..] {
            let v = a.abs();
            if v > m {
                m = v;
            }
        }
        if Zero::is_zero(&m) {
            return <Rat as One>::one();
        }
        &a0 / (&a0 + &m)
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
    }

    #[test]
    fn div_rem_gcd() {
        // (x-1)(x+2) = x^2 + x - 2
        let f = up(&[-2, 1, 1]);
        let g = up(&[-1, 1]); // x - 1
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, up(&[2, 1]));
        let h = up(&[-2, 1]).mul(&g); // (x-2)(x-1)
        let d = f.gcd(&h);
        assert_eq!(d, up(&[-1, 1]));
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = up(&[-1, 0, 1]); // x^2 - 1
        let g = up(&[1, 1]); // x + 1
        let (d, s, t) = f.extended_gcd(&g);
        assert_eq!(d, up(&[1, 1]));
        assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
    }

    #[test]
    fn squarefree() {
        // (1-x)^2 (1+x) -> (1-x)(1+x) up to scalar
        let f = up(&[1, -1]).mul(&up(&[1, -1])).mul(&up(&[1, 1]));
        let sf = f.squarefree_part().primitive();
        let expect = up(&[1, -1]).mul(&up(&[1, 1])).primitive();
        assert_eq!(sf, expect);
    }

    #[test]
    fn shift_scale_reverse() {
        let f = up(&[1, 2, 3]);
        let shifted = f.taylor_shift(&rat(1, 1));
        assert_eq!(shifted.eval(&rat(0, 1)), f.eval(&rat(1, 1)));
        let scaled = f.scale(&rat(2, 1));
        assert_eq!(scaled.eval(&rat(1, 1)), f.eval(&rat(2, 1)));
        let r = f.reverse();
        assert_eq!(r, up(&[3, 2, 1]));
    }
}
