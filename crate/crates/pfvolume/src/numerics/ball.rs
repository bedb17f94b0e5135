//! Midpoint-radius ball arithmetic with outward rounding.
//!
//! Every operation takes a working precision for the midpoint; rounding
//! errors and input radii are accumulated into the (low-precision, upward
//! rounded) radius, so the true value is always enclosed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::float::Float;
use crate::algebra::Rat;

/// Mantissa bits kept for radii.
const RAD_BITS: u32 = 24;

#[derive(Clone)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

impl Ball {
    pub fn zero() -> Self {
        Ball {
            mid: Float::zero(),
            rad: Float::zero(),
        }
    }

    pub fn one() -> Self {
        Ball {
            mid: Float::one(),
            rad: Float::zero(),
        }
    }

    pub fn exact(mid: Float) -> Self {
        Ball {
            mid,
            rad: Float::zero(),
        }
    }

    pub fn new(mid: Float, rad: Float) -> Self {
        debug_assert!(!rad.is_negative());
        Ball { mid, rad }
    }

    pub fn from_i64(v: i64) -> Self {
        Ball::exact(Float::from_i64(v))
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        let (mid, err) = Float::from_rat(r, prec);
        Ball {
            mid,
            rad: err.round_up_mag(RAD_BITS),
        }
    }

    /// Ball from exact rational interval endpoints.
    pub fn from_interval(lo: &Rat, hi: &Rat, prec: u32) -> Self {
        let two = Rat::from_integer(2.into());
        let mid = (lo + hi) / &two;
        let half = (hi - lo) / &two;
        let (m, me) = Float::from_rat(&mid, prec);
        let (r, re) = Float::from_rat(&half, RAD_BITS);
        let rad = up(&up(&r, &re), &me);
        Ball { mid: m, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Upper bound for |value|.
    pub fn abs_upper(&self) -> Float {
        up(&self.mid.abs(), &self.rad)
    }

    /// Lower bound for |value| (zero if the ball straddles zero).
    pub fn abs_lower(&self) -> Float {
        let v = self.mid.abs().sub_exact(&self.rad);
        if v.is_negative() {
            Float::zero()
        } else {
            v.round_trunc(RAD_BITS).0
        }
    }

    pub fn lower(&self) -> Float {
        self.mid.sub_exact(&self.rad)
    }

    pub fn upper(&self) -> Float {
        self.mid.add_exact(&self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs().cmp_value(&self.rad) != std::cmp::Ordering::Greater
    }

    pub fn is_positive_definite(&self) -> bool {
        self.mid.is_positive() && self.mid.cmp_value(&self.rad) == std::cmp::Ordering::Greater
    }

    pub fn is_negative_definite(&self) -> bool {
        self.neg().is_positive_definite()
    }

    pub fn contains_rat(&self, q: &Rat) -> bool {
        let v = q - self.mid.to_rat();
        v.abs() <= self.rad.to_rat()
    }

    /// Certified strict comparison: true when every point of self is below
    /// every point of other.
    pub fn certainly_lt(&self, other: &Ball) -> bool {
        self.upper().cmp_value(&other.lower()) == std::cmp::Ordering::Less
    }

    pub fn neg(&self) -> Self {
        Ball {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        let exact = self.mid.add_exact(&o.mid);
        let (mid, err) = exact.round_trunc(prec);
        let rad = up(&up(&self.rad, &o.rad), &err);
        Ball { mid, rad }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let exact = self.mid.mul_exact(&o.mid);
        let (mid, err) = exact.round_trunc(prec);
        // |a||rb| + |b||ra| + ra rb + rounding
        let t1 = mul_up(&self.mid.abs(), &o.rad);
        let t2 = mul_up(&o.mid.abs(), &self.rad);
        let t3 = mul_up(&self.rad, &o.rad);
        let rad = up(&up(&up(&t1, &t2), &t3), &err);
        Ball { mid, rad }
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Self {
        self.mul(&Ball::from_i64(k), prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Ball {
            mid: self.mid.mul_pow2(k),
            rad: self.rad.mul_pow2(k),
        }
    }

    /// Division; `None` when the divisor ball contains zero.
    pub fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        let d_lo = o.abs_lower();
        if d_lo.is_zero() {
            return None;
        }
        let (mid, err) = self.mid.div_trunc(&o.mid, prec);
        // |a/b - a'/b'| <= (ra + |a'/b'| rb) / (|b'| - rb) with a', b' midpoints
        let quotient_abs = up(&mid.abs(), &err);
        let numer = up(&self.rad, &mul_up(&quotient_abs, &o.rad));
        let denom = o.mid.abs().sub_exact(&o.rad);
        if !denom.is_positive() {
            return None;
        }
        let prop = div_up(&numer, &denom);
        let rad = up(&prop, &err);
        Some(Ball { mid, rad })
    }

    pub fn recip(&self, prec: u32) -> Option<Self> {
        Ball::one().div(self, prec)
    }

    pub fn pow_i(&self, e: u32, prec: u32) -> Self {
        let mut acc = Ball::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, prec);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, prec);
            }
        }
        acc
    }

    /// Square root; requires a certainly-positive ball.
    pub fn sqrt(&self, prec: u32) -> Option<Self> {
        if !self.is_positive_definite() {
            return None;
        }
        let (s, serr) = self.mid.sqrt_trunc(prec);
        // |sqrt(x) - sqrt(m)| <= r / (2 sqrt(m - r)), bounded by r / sqrt(lo)
        let lo = self.lower();
        let (slo, slo_err) = lo.sqrt_trunc(RAD_BITS);
        let s_lower = s_trunc_lower(&slo, &slo_err);
        let prop = if self.rad.is_zero() {
            Float::zero()
        } else {
            div_up(&self.rad, &s_lower)
        };
        let rad = up(&prop, &serr);
        Some(Ball { mid: s, rad })
    }

    /// n-th root of a certainly positive ball.
    pub fn nth_root(&self, n: u32, prec: u32) -> Option<Self> {
        if n == 1 {
            return Some(self.clone());
        }
        if !self.is_positive_definite() {
            return None;
        }
        let (s, serr) = self.mid.nth_root_trunc(n, prec);
        // |x^(1/n) - m^(1/n)| <= r * max|d/dx x^(1/n)| on [lo, hi]
        //                      = r / (n * lo^((n-1)/n)) <= r / (n * floor_root(lo)^(n-1))
        let lo = self.lower();
        let (rlo, rlo_err) = lo.nth_root_trunc(n, RAD_BITS);
        let rl = s_trunc_lower(&rlo, &rlo_err);
        let mut denom = Float::from_i64(n as i64);
        for _ in 0..n - 1 {
            denom = denom.mul_exact(&rl);
        }
        let prop = if self.rad.is_zero() {
            Float::zero()
        } else {
            div_up(&self.rad, &denom)
        };
        let rad = up(&prop, &serr);
        Some(Ball { mid: s, rad })
    }

    /// x^(p/q) for a certainly positive ball.
    pub fn pow_rat(&self, p: &Rat, prec: u32) -> Option<Self> {
        if p.is_zero() {
            return Some(Ball::one());
        }
        let num = p.numer();
        let den = p.denom();
        let den_u: u32 = den.try_into().ok()?;
        let root = self.nth_root(den_u, prec + 8)?;
        let e_abs: u32 = num.abs().try_into().ok()?;
        let powed = root.pow_i(e_abs, prec + 8);
        if num.is_negative() {
            powed.recip(prec)
        } else {
            Some(powed)
        }
    }

    /// Natural logarithm of a certainly positive ball.
    pub fn ln(&self, prec: u32) -> Option<Self> {
        if !self.is_positive_definite() {
            return None;
        }
        let wp = prec + 16;
        // write mid * 2^e with mid in [1, 2)
        let k = self.mid.magnitude_exponent() - 1;
        let m = self.clone().mul_pow2(-k);
        // ln(m) via 2 atanh((m-1)/(m+1))
        let num = m.sub(&Ball::one(), wp);
        let den = m.add(&Ball::one(), wp);
        let u = num.div(&den, wp)?;
        let lnm = atanh_series(&u, wp)?.mul_pow2(1);
        if k == 0 {
            return Some(lnm.round(prec));
        }
        let ln2 = ln2(wp);
        let out = lnm.add(&ln2.mul(&Ball::from_i64(k), wp), wp);
        Some(out.round(prec))
    }

    /// Exponential function.
    pub fn exp(&self, prec: u32) -> Self {
        let wp = prec + 24;
        // argument reduction: exp(x) = exp(x/2^j)^(2^j) with |x/2^j| <= 1/32
        let mut j = 0i64;
        if !self.mid.is_zero() {
            let mag = self.abs_upper();
            if !mag.is_zero() {
                let k = mag.magnitude_exponent();
                if k > -5 {
                    j = k + 5;
                }
            }
        }
        let x = self.mul_pow2(-j);
        // series sum x^i / i!, remainder < 2 |x|^(N+1)/(N+1)!
        let mut sum = Ball::one();
        let mut term = Ball::one();
        let mut n = 1i64;
        loop {
            term = term.mul(&x, wp);
            term = term
                .div(&Ball::from_i64(n), wp)
                .expect("factorial divisor nonzero");
            sum = sum.add(&term, wp);
            let t_mag = term.abs_upper();
            if t_mag.is_zero()
                || (!sum.mid.is_zero()
                    && t_mag.magnitude_exponent() < sum.mid.magnitude_exponent() - wp as i64 - 8)
            {
                // bound the tail by a geometric series: |x| <= 1/32
                let tail = mul_up(&t_mag, &Float::from_rat(&Rat::new(BigInt::from(2), BigInt::from(31)), RAD_BITS).0);
                let mut out = sum;
                out.rad = up(&out.rad, &tail);
                // undo the argument reduction by repeated squaring
                for _ in 0..j {
                    out = out.mul(&out, wp);
                }
                return out.round(prec);
            }
            n += 1;
        }
    }

    /// Round the midpoint to `prec` bits, folding the error into the radius.
    pub fn round(&self, prec: u32) -> Self {
        let (mid, err) = self.mid.round_trunc(prec);
        Ball {
            mid,
            rad: up(&self.rad, &err),
        }
    }

    /// Enclosure union.
    pub fn join(&self, o: &Self, prec: u32) -> Self {
        let lo = if self.lower().cmp_value(&o.lower()) == std::cmp::Ordering::Less {
            self.lower()
        } else {
            o.lower()
        };
        let hi = if self.upper().cmp_value(&o.upper()) == std::cmp::Ordering::Greater {
            self.upper()
        } else {
            o.upper()
        };
        let two = Float::from_i64(2);
        let (mid, merr) = hi.add_exact(&lo).div_trunc(&two, prec);
        let (half, herr) = hi.sub_exact(&lo).div_trunc(&two, RAD_BITS);
        Ball {
            mid,
            rad: up(&up(&half.abs(), &herr), &merr),
        }
    }

    /// Add a plain error magnitude to the radius.
    pub fn widen(&self, extra: &Float) -> Self {
        Ball {
            mid: self.mid.clone(),
            rad: up(&self.rad, &extra.abs()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Decimal string of the midpoint with `digits` significant digits.
    pub fn decimal_mid(&self, digits: usize) -> String {
        decimal_of_float(&self.mid, digits)
    }

    /// Decimal string (2 significant digits) of the radius.
    pub fn decimal_rad(&self) -> String {
        decimal_of_float(&self.rad, 2)
    }

    /// Number of correct significant decimal digits certified by the radius.
    pub fn certified_digits(&self) -> usize {
        if self.mid.is_zero() {
            return 0;
        }
        if self.rad.is_zero() {
            return usize::MAX;
        }
        let mag = self.mid.magnitude_exponent();
        let rmag = self.rad.magnitude_exponent();
        let good_bits = mag - rmag;
        if good_bits <= 0 {
            0
        } else {
            // bits * log10(2), rounded down a touch for safety
            ((good_bits as f64) * 0.30102) as usize
        }
    }
}

impl std::fmt::Debug for Ball {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} +/- {}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

/// Upward-rounded sum of two nonnegative floats.
pub(crate) fn up(a: &Float, b: &Float) -> Float {
    a.add_exact(b).round_up_mag(RAD_BITS)
}

pub(crate) fn mul_up(a: &Float, b: &Float) -> Float {
    a.mul_exact(b).round_up_mag(RAD_BITS).abs()
}

pub(crate) fn div_up(a: &Float, b: &Float) -> Float {
    let (q, err) = a.div_trunc(b, RAD_BITS);
    up(&q.abs(), &err)
}

/// Lower bound from a truncated root: the floor value itself.
fn s_trunc_lower(s: &Float, _err: &Float) -> Float {
    s.clone()
}

/// atanh by its odd power series; valid and geometric for |u| <= 1/3 + eps.
fn atanh_series(u: &Ball, wp: u32) -> Option<Ball> {
    let u2 = u.mul(u, wp);
    // |u| must be certifiably below 1/2 for the tail bound
    let half = Float::new(BigInt::one(), -1);
    if u.abs_upper().cmp_value(&half) != std::cmp::Ordering::Less {
        return None;
    }
    let mut sum = u.clone();
    let mut upow = u.clone();
    let mut k = 1i64;
    loop {
        upow = upow.mul(&u2, wp);
        k += 2;
        let term = upow.div(&Ball::from_i64(k), wp)?;
        sum = sum.add(&term, wp);
        let t_mag = term.abs_upper();
        if t_mag.is_zero()
            || (!sum.mid.is_zero()
                && t_mag.magnitude_exponent() < sum.mid.magnitude_exponent() - wp as i64 - 8)
        {
            // geometric tail with ratio u^2 <= 1/4: tail <= |term| * (1/3)
            let third = Float::from_rat(&Rat::new(BigInt::one(), BigInt::from(2)), RAD_BITS).0;
            let tail = mul_up(&t_mag, &third);
            let mut out = sum;
            out.rad = up(&out.rad, &tail);
            return Some(out);
        }
    }
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> Ball {
    let third = Ball::from_rat(&Rat::new(BigInt::one(), BigInt::from(3)), prec + 8);
    atanh_series(&third, prec + 8)
        .expect("1/3 < 1/2")
        .mul_pow2(1)
        .round(prec)
}

/// Decimal rendering of a float with the given number of significant digits.
fn decimal_of_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.clamp(1, 100_000);
    let rat = x.to_rat();
    let neg = rat.is_negative();
    let a = rat.abs();
    // decimal exponent: floor(log10(a))
    let mut e10: i64 = ((a.numer().bits() as i64 - a.denom().bits() as i64) as f64 * 0.30103)
        as i64;
    let ten = BigInt::from(10);
    // adjust e10 so that 10^e10 <= a < 10^(e10+1)
    loop {
        let p = pow10(&ten, e10);
        if a < p {
            e10 -= 1;
            continue;
        }
        let p_next = pow10(&ten, e10 + 1);
        if a >= p_next {
            e10 += 1;
            continue;
        }
        break;
    }
    // scaled = round-to-nearest(a * 10^(digits-1-e10))
    let shift = digits as i64 - 1 - e10;
    let scaled: BigInt = {
        let v = if shift >= 0 {
            &a * Rat::from_integer(ten.pow(shift as u32))
        } else {
            &a / Rat::from_integer(ten.pow((-shift) as u32))
        };
        let doubled = v.numer() * BigInt::from(2) + v.denom();
        doubled / (v.denom() * BigInt::from(2))
    };
    let mut s = scaled.to_string();
    // a carry can push the scaled value to digits+1 places (e.g. 9.99 -> 10.0)
    if s.len() > digits {
        s.truncate(digits);
        e10 += 1;
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e10 >= 0 && (e10 as usize) < digits {
        let point = e10 as usize + 1;
        out.push_str(&s[..point.min(s.len())]);
        if point < s.len() {
            out.push('.');
            out.push_str(&s[point..]);
        }
    } else if e10 < 0 && e10 > -6 {
        out.push_str("0.");
        for _ in 0..(-e10 - 1) {
            out.push('0');
        }
        out.push_str(&s);
    } else {
        out.push_str(&s[..1]);
        if s.len() > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&e10.to_string());
    }
    out
}

fn pow10(ten: &BigInt, e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(ten.pow(e as u32))
    } else {
        Rat::new(BigInt::one(), ten.pow((-e) as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn enclosure_add_mul() {
        let a = Ball::from_rat(&rat(1, 3), 64);
        let b = Ball::from_rat(&rat(1, 7), 64);
        let s = a.add(&b, 64);
        assert!(s.contains_rat(&rat(10, 21)));
        let p = a.mul(&b, 64);
        assert!(p.contains_rat(&rat(1, 21)));
        let q = a.div(&b, 64).unwrap();
        assert!(q.contains_rat(&rat(7, 3)));
    }

    #[test]
    fn sqrt_encloses() {
        let two = Ball::from_i64(2);
        let s = two.sqrt(128).unwrap();
        // 1.41421356237309504880168872420969807856967187537694
        let lo = rat(141421356237309504, 100000000000000000);
        let hi = rat(141421356237309505, 100000000000000000);
        assert!(s.lower().to_rat() < hi);
        assert!(s.upper().to_rat() > lo);
        let sq = s.mul(&s, 128);
        assert!(sq.contains_rat(&rat(2, 1)));
    }

    #[test]
    fn ln_exp_roundtrip() {
        let x = Ball::from_rat(&rat(7, 5), 96);
        let l = x.ln(96).unwrap();
        let back = l.exp(96);
        assert!(back.contains_rat(&rat(7, 5)));
        // exp(1) encloses e
        let e = Ball::one().exp(128);
        let e_lo = rat(271828182845904523, 100000000000000000);
        let e_hi = rat(271828182845904524, 100000000000000000);
        assert!(e.lower().to_rat() < e_hi && e.upper().to_rat() > e_lo);
    }

    #[test]
    fn ln2_value() {
        let l = ln2(96);
        // 0.693147180559945309417
        let lo = rat(693147180559945309, 1000000000000000000);
        let hi = rat(693147180559945310, 1000000000000000000);
        assert!(l.upper().to_rat() > lo && l.lower().to_rat() < hi);
    }

    #[test]
    fn pow_rat_cuberoot() {
        let x = Ball::from_i64(8);
        let r = x.pow_rat(&rat(1, 3), 80).unwrap();
        assert!(r.contains_rat(&rat(2, 1)));
        let r2 = x.pow_rat(&rat(-2, 3), 80).unwrap();
        assert!(r2.contains_rat(&rat(1, 4)));
    }

    #[test]
    fn decimal_output() {
        let x = Ball::from_rat(&rat(1, 8), 64);
        assert_eq!(x.decimal_mid(3), "0.125");
        let y = Ball::from_i64(1062);
        assert_eq!(y.decimal_mid(4), "1062");
        let pi_ish = Ball::from_rat(&rat(314159, 100000), 64);
        assert!(pi_ish.decimal_mid(6).starts_with("3.14159"));
    }

    #[test]
    fn certified_digit_count() {
        let mut x = Ball::from_rat(&rat(1, 3), 200);
        x = x.round(200);
        assert!(x.certified_digits() > 50);
    }
}
