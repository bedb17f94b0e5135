//! Arbitrary-precision binary floating point on top of `BigInt`.
//!
//! A value is `mant * 2^exp` with a signed mantissa. Operations are exact
//! where cheap and otherwise truncate toward zero while reporting an error
//! bound, which ball arithmetic folds into the radius. Radius arithmetic
//! rounds away from zero so enclosures stay sound.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct Float {
    mant: BigInt,
    exp: i64,
}

impl Float {
    pub fn zero() -> Self {
        Float {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Float {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Construct `m * 2^e`, stripping trailing zero bits of the mantissa.
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Float::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Float {
                mant: &mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Float { mant, exp }
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Float::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Float::new(v, 0)
    }

    /// Exact conversion when the rational is dyadic; `None` otherwise.
    pub fn from_rat_exact(r: &Rat) -> Option<Self> {
        let den = r.denom();
        if den.is_one() {
            return Some(Float::from_bigint(r.numer().clone()));
        }
        let bits = den.bits();
        if den == &(BigInt::one() << (bits - 1)) {
            Some(Float::new(r.numer().clone(), -((bits - 1) as i64)))
        } else {
            None
        }
    }

    /// Rounded conversion: returns a float within `2^-extra` relative error
    /// plus the truncation bound as a second value.
    pub fn from_rat(r: &Rat, prec: u32) -> (Self, Self) {
        if let Some(f) = Float::from_rat_exact(r) {
            return (f, Float::zero());
        }
        let num = r.numer();
        let den = r.denom();
        let nb = num.bits() as i64;
        let db = den.bits() as i64;
        // scale so the quotient carries prec + 2 significant bits
        let shift = prec as i64 + 2 - (nb - db);
        let (q, exact) = if shift >= 0 {
            let scaled = num << shift as u64;
            let (q, r2) = scaled.div_rem(den);
            (q, r2.is_zero())
        } else {
            let scaled_den = den << (-shift) as u64;
            let (q, r2) = num.div_rem(&scaled_den);
            (q, r2.is_zero())
        };
        let out = Float::new(q, -shift);
        let err = if exact {
            Float::zero()
        } else {
            Float::new(BigInt::one(), -shift)
        };
        (out, err)
    }

    pub fn neg(&self) -> Self {
        Float {
            mant: -self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Float {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position of the most significant bit: value in [2^(k-1), 2^k).
    pub fn magnitude_exponent(&self) -> i64 {
        assert!(!self.is_zero());
        self.exp + self.mant.bits() as i64
    }

    /// Truncate toward zero to `prec` mantissa bits; returns the result and
    /// an upper bound for the absolute error.
    pub fn round_trunc(&self, prec: u32) -> (Self, Self) {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return (self.clone(), Float::zero());
        }
        let k = bits - prec as u64;
        let q = &self.mant >> k;
        let inexact = (&q << k) != self.mant;
        let out = Float::new(q, self.exp + k as i64);
        let err = if inexact {
            Float::new(BigInt::one(), self.exp + k as i64)
        } else {
            Float::zero()
        };
        (out, err)
    }

    /// Round the magnitude upward to `prec` mantissa bits (for radii).
    pub fn round_up_mag(&self, prec: u32) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let q = self.mant.abs() >> k;
        let inexact = (&q << k) != self.mant.abs();
        let q = if inexact { q + 1 } else { q };
        let sign = if self.mant.is_negative() { -1 } else { 1 };
        Float::new(q * sign, self.exp + k as i64)
    }

    /// Exact addition (mantissas aligned; can be expensive for huge gaps).
    pub fn add_exact(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let ma = &self.mant << (self.exp - e) as u64;
        let mb = &o.mant << (o.exp - e) as u64;
        Float::new(ma + mb, e)
    }

    pub fn sub_exact(&self, o: &Self) -> Self {
        self.add_exact(&o.neg())
    }

    /// Exact multiplication.
    pub fn mul_exact(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Float::zero();
        }
        Float::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    /// Quotient truncated toward zero with `prec` significant bits; second
    /// value bounds the absolute error.
    pub fn div_trunc(&self, o: &Self, prec: u32) -> (Self, Self) {
        assert!(!o.is_zero(), "float division by zero");
        if self.is_zero() {
            return (Float::zero(), Float::zero());
        }
        let nb = self.mant.bits() as i64;
        let db = o.mant.bits() as i64;
        let shift = prec as i64 + 2 - (nb - db);
        let (q, rem) = if shift >= 0 {
            (&self.mant << shift as u64).div_rem(&o.mant)
        } else {
            self.mant.div_rem(&(&o.mant << (-shift) as u64))
        };
        let e = self.exp - o.exp - shift;
        let out = Float::new(q, e);
        let err = if rem.is_zero() {
            Float::zero()
        } else {
            Float::new(BigInt::one(), e)
        };
        (out, err)
    }

    /// Integer-exponent scaling by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Float::zero();
        }
        Float {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Floor square root with error bound (result^2 <= self).
    pub fn sqrt_trunc(&self, prec: u32) -> (Self, Self) {
        assert!(!self.is_negative(), "sqrt of negative float");
        if self.is_zero() {
            return (Float::zero(), Float::zero());
        }
        // shift so the shifted mantissa has ~2*prec bits and even exponent
        let bits = self.mant.bits() as i64;
        let mut shift = (2 * prec as i64 + 4 - bits).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let s = m.sqrt();
        let exact = &s * &s == m;
        let e = (self.exp - shift) / 2;
        let out = Float::new(s, e);
        let err = if exact {
            Float::zero()
        } else {
            Float::new(BigInt::one(), e)
        };
        (out, err)
    }

    /// Floor n-th root with error bound; requires a positive value.
    pub fn nth_root_trunc(&self, n: u32, prec: u32) -> (Self, Self) {
        assert!(self.is_positive(), "nth_root of non-positive float");
        let n_i = n as i64;
        let bits = self.mant.bits() as i64;
        let mut shift = (n_i * prec as i64 + 4 - bits).max(0);
        let r = (self.exp - shift).rem_euclid(n_i);
        if r != 0 {
            shift += n_i - r;
        }
        let m = &self.mant << shift as u64;
        let s = m.nth_root(n);
        let exact = num_traits::pow::Pow::pow(&s, n) == m;
        let e = (self.exp - shift) / n_i;
        let out = Float::new(s, e);
        let err = if exact {
            Float::zero()
        } else {
            Float::new(BigInt::one(), e)
        };
        (out, err)
    }

    /// Compare by value.
    pub fn cmp_value(&self, o: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self.mant.sign(), o.mant.sign()) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) => return Ordering::Less,
            (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        // same nonzero sign: compare magnitude exponents first
        let ka = self.magnitude_exponent();
        let kb = o.magnitude_exponent();
        let positive = self.mant.is_positive();
        if ka != kb {
            let mag = ka.cmp(&kb);
            return if positive { mag } else { mag.reverse() };
        }
        self.sub_exact(o)
            .mant
            .cmp(&BigInt::zero())
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as u64)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (trunc, _) = self.round_trunc(64);
        let m = trunc.mant.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(trunc.exp.clamp(-2000, 2000) as i32)
    }
}

impl std::fmt::Debug for Float {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn basic_ops() {
        let a = Float::from_i64(3);
        let b = Float::new(BigInt::from(1), -2); // 0.25
        assert_eq!(a.add_exact(&b).to_rat(), rat(13, 4));
        assert_eq!(a.mul_exact(&b).to_rat(), rat(3, 4));
        let (q, err) = a.div_trunc(&Float::from_i64(7), 40);
        assert!(err.to_rat() <= rat(1, 1 << 30));
        let diff = (q.to_rat() - rat(3, 7)).abs();
        assert!(diff <= err.to_rat());
    }

    #[test]
    fn rounding_error_bounds() {
        let x = Float::from_rat(&rat(1, 3), 50);
        let diff = (x.0.to_rat() - rat(1, 3)).abs();
        assert!(diff <= x.1.to_rat());
        assert!(!x.1.is_zero());
        let y = Float::from_rat(&rat(5, 8), 50);
        assert!(y.1.is_zero());
        assert_eq!(y.0.to_rat(), rat(5, 8));
    }

    #[test]
    fn sqrt_and_roots() {
        let two = Float::from_i64(2);
        let (s, err) = two.sqrt_trunc(80);
        let s_rat = s.to_rat();
        assert!((&s_rat * &s_rat) <= rat(2, 1));
        let upper = s_rat + err.to_rat();
        assert!(&upper * &upper >= rat(2, 1));
        let eight = Float::from_i64(8);
        let (c, cerr) = eight.nth_root_trunc(3, 60);
        assert_eq!(c.to_rat(), rat(2, 1));
        assert!(cerr.is_zero());
    }

    #[test]
    fn compare() {
        use std::cmp::Ordering;
        let a = Float::from_rat(&rat(1, 3), 100).0;
        let b = Float::from_rat(&rat(1, 2), 100).0;
        assert_eq!(a.cmp_value(&b), Ordering::Less);
        assert_eq!(b.cmp_value(&a), Ordering::Greater);
        assert_eq!(a.cmp_value(&a), Ordering::Equal);
        assert_eq!(a.neg().cmp_value(&a), Ordering::Less);
    }
}
