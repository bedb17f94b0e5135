//! Closed rational intervals for exact interval arithmetic.
//!
//! Used for sign determination at real algebraic points and for excluding
//! spurious critical-point candidates. Endpoints are exact rationals, so
//! there is no rounding anywhere.

use num_traits::{Signed, Zero};

use super::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if it is constant over the interval: -1, 0 (only for the point
    /// interval at zero), or 1; `None` when the interval straddles zero.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let c: [Rat; 4] = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        RatInterval { lo, hi }
    }

    pub fn pow(&self, e: u32) -> RatInterval {
        if e == 0 {
            return RatInterval::point(Rat::from_integer(1.into()));
        }
        if e % 2 == 1 || !self.contains_zero() {
            let a = super::rat_pow(&self.lo, e);
            let b = super::rat_pow(&self.hi, e);
            if a <= b {
                RatInterval { lo: a, hi: b }
            } else {
                RatInterval { lo: b, hi: a }
            }
        } else {
            // even power over an interval containing zero
            let a = super::rat_pow(&self.lo, e);
            let b = super::rat_pow(&self.hi, e);
            RatInterval {
                lo: Rat::zero(),
                hi: a.max(b),
            }
        }
    }
}
