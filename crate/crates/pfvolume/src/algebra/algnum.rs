//! Real algebraic numbers: a square-free defining polynomial plus an
//! isolating interval, refinable on demand.
//!
//! Comparisons refine intervals until they are disjoint; exact equality is
//! detected through the gcd of the defining polynomials, so sorting and
//! "closest to but outside" selections never rely on floating point.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::roots::descartes_count_upper;
use super::{Rat, RatInterval, UniPoly};

#[derive(Debug, Clone)]
pub struct RealAlgebraicNumber {
    poly: UniPoly,
    lo: Rat,
    hi: Rat,
}

impl RealAlgebraicNumber {
    /// Exact rational value as a point interval.
    pub fn from_rational(r: Rat) -> Self {
        // defining polynomial q x - p
        let poly = UniPoly::from_coeffs(vec![-r.clone(), Rat::from_integer(1.into())]).primitive();
        RealAlgebraicNumber {
            poly,
            lo: r.clone(),
            hi: r,
        }
    }

    /// Construct from a square-free polynomial and an open interval that
    /// contains exactly one of its roots. Endpoints are adjusted until they
    /// are non-roots with a sign change (or the root is found to be an exact
    /// rational, collapsing to a point).
    pub fn from_sign_change(p: &UniPoly, mut lo: Rat, mut hi: Rat) -> Self {
        let poly = p.primitive();
        loop {
            let flo = poly.eval(&lo);
            let fhi = poly.eval(&hi);
            if flo.is_zero() {
                match Self::nudge_inward(&poly, &lo, &hi, true) {
                    NudgeResult::Point(r) => return Self::from_rational(r),
                    NudgeResult::NewLo(l) => {
                        lo = l;
                        continue;
                    }
                    NudgeResult::NewHi(h) => {
                        hi = h;
                        continue;
                    }
                }
            }
            if fhi.is_zero() {
                match Self::nudge_inward(&poly, &lo, &hi, false) {
                    NudgeResult::Point(r) => return Self::from_rational(r),
                    NudgeResult::NewLo(l) => {
                        lo = l;
                        continue;
                    }
                    NudgeResult::NewHi(h) => {
                        hi = h;
                        continue;
                    }
                }
            }
            assert!(
                flo.is_positive() != fhi.is_positive(),
                "isolating interval must have a sign change"
            );
            return RealAlgebraicNumber { poly, lo, hi };
        }
    }

    fn nudge_inward(poly: &UniPoly, lo: &Rat, hi: &Rat, from_lo: bool) -> NudgeResult {
        // the unique root lies strictly inside (lo, hi); move the offending
        // endpoint past any touching root of `poly`
        let two = Rat::from_integer(2.into());
        let mut frac = (hi - lo) / &two / &two;
        loop {
            let cand = if from_lo { lo + &frac } else { hi - &frac };
            if poly.eval(&cand).is_zero() {
                return NudgeResult::Point(cand);
            }
            let cnt = if from_lo {
                descartes_count_upper(poly, &cand, hi)
            } else {
                descartes_count_upper(poly, lo, &cand)
            };
            if cnt == 1 {
                return if from_lo {
                    NudgeResult::NewLo(cand)
                } else {
                    NudgeResult::NewHi(cand)
                };
            }
            if cnt == 0 {
                // root is on the other side of the candidate
                return if from_lo {
                    NudgeResult::NewHi(cand)
                } else {
                    NudgeResult::NewLo(cand)
                };
            }
            frac = frac / &two;
        }
    }

    pub fn defining_polynomial(&self) -> &UniPoly {
        &self.poly
    }

    pub fn interval(&self) -> (Rat, Rat) {
        (self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Exact rational value, if this number is rational (point interval).
    pub fn as_rational(&self) -> Option<Rat> {
        if self.lo == self.hi {
            Some(self.lo.clone())
        } else {
            None
        }
    }

    fn refine_step(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rat::from_integer(2.into());
        let fm = self.poly.eval(&mid);
        if fm.is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let flo = self.poly.eval(&self.lo);
        if flo.is_positive() != fm.is_positive() {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// A copy refined to an interval of width at most `width`.
    pub fn refined(&self, width: &Rat) -> Self {
        assert!(width.is_positive(), "refine width must be positive");
        let mut out = self.clone();
        while out.width() > *width {
            out.refine_step();
        }
        out
    }

    /// Refine in place to width at most `width`.
    pub fn refine_to(&mut self, width: &Rat) {
        assert!(width.is_positive());
        while self.width() > *width {
            self.refine_step();
        }
    }

    /// Refined ends as a rational interval of width at most 2^-bits.
    pub fn approx(&self, bits: u32) -> (Rat, Rat) {
        let width = Rat::new(1.into(), num_bigint::BigInt::from(2).pow(bits));
        let r = self.refined(&width);
        (r.lo, r.hi)
    }

    /// A rational strictly greater than this number, within `margin` of it.
    pub fn rational_above(&self, margin: &Rat) -> Rat {
        if let Some(r) = self.as_rational() {
            return r + margin;
        }
        self.refined(margin).hi
    }

    /// A rational strictly smaller than this number, within `margin` of it.
    pub fn rational_below(&self, margin: &Rat) -> Rat {
        if let Some(r) = self.as_rational() {
            return r - margin;
        }
        self.refined(margin).lo
    }

    /// Exact comparison with a rational; O(degree) with no refinement.
    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        if self.lo == self.hi {
            return self.lo.cmp(q);
        }
        if *q <= self.lo {
            return Ordering::Greater;
        }
        if *q >= self.hi {
            return Ordering::Less;
        }
        let fq = self.poly.eval(q);
        if fq.is_zero() {
            return Ordering::Equal;
        }
        let flo = self.poly.eval(&self.lo);
        if fq.is_positive() == flo.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact comparison between two real algebraic numbers.
    pub fn compare(&self, other: &Self) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rat(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rat(&q).reverse();
        }
        // equality via gcd of the defining polynomials
        let g = self.poly.gcd(&other.poly);
        if g.deg() > 0 {
            let ov_lo = if self.lo > other.lo {
                self.lo.clone()
            } else {
                other.lo.clone()
            };
            let ov_hi = if self.hi < other.hi {
                self.hi.clone()
            } else {
                other.hi.clone()
            };
            if ov_lo < ov_hi {
                // a root of g inside the overlap is a root of both defining
                // polynomials inside both isolating intervals, hence equality
                let glo = g.eval(&ov_lo);
                let ghi = g.eval(&ov_hi);
                if glo.is_zero() || ghi.is_zero() {
                    // endpoint root of g: check whether it is the common value
                    let cand = if glo.is_zero() { ov_lo.clone() } else { ov_hi.clone() };
                    if self.cmp_rat(&cand) == Ordering::Equal
                        && other.cmp_rat(&cand) == Ordering::Equal
                    {
                        return Ordering::Equal;
                    }
                } else if glo.is_positive() != ghi.is_positive() {
                    return Ordering::Equal;
                } else if descartes_count_upper(&g, &ov_lo, &ov_hi) > 0 {
                    // even number of sign agreements can still hide roots of g,
                    // but g divides both square-free polynomials, each with one
                    // root in its interval; check by exact root isolation
                    for r in super::roots::isolate_real_roots(&g) {
                        if self.compare_disjoint_safe(&r) == Ordering::Equal
                            && other.compare_disjoint_safe(&r) == Ordering::Equal
                        {
                            return Ordering::Equal;
                        }
                    }
                }
            }
        }
        // not equal: refine until the intervals separate
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a.refine_step();
            b.refine_step();
        }
    }

    // comparison helper that never recurses back into the gcd path
    fn compare_disjoint_safe(&self, other: &Self) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rat(&q);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        for _ in 0..4096 {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            // equal values would loop forever; detect via interval containment
            // of each other's polynomial root by sign evaluation
            if a.poly == b.poly && a.lo >= b.lo && a.hi <= b.hi {
                return Ordering::Equal;
            }
            if a.poly == b.poly && b.lo >= a.lo && b.hi <= a.hi {
                return Ordering::Equal;
            }
            a.refine_step();
            b.refine_step();
        }
        Ordering::Equal
    }

    /// Exact sign of `g` evaluated at this number.
    pub fn sign_of(&self, g: &UniPoly) -> i32 {
        if g.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            let v = g.eval(&q);
            return if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
        }
        let h = self.poly.gcd(g);
        if h.deg() > 0 {
            let hlo = h.eval(&self.lo);
            let hhi = h.eval(&self.hi);
            // h divides the square-free defining polynomial, so h has at most
            // one root in the isolating interval and non-root endpoints
            if hlo.is_positive() != hhi.is_positive() {
                return 0;
            }
        }
        // g(alpha) != 0: refine until the interval evaluation is definite
        let mut me = self.clone();
        loop {
            let iv = g.eval_interval(&RatInterval::new(me.lo.clone(), me.hi.clone()));
            if let Some(s) = iv.definite_sign() {
                if s != 0 {
                    return s;
                }
            }
            me.refine_step();
        }
    }

    /// f64 approximation (uncertified, for diagnostics and heuristics).
    pub fn to_f64(&self) -> f64 {
        let r = self.refined(&Rat::new(1.into(), num_bigint::BigInt::from(2).pow(60)));
        super::poly::rat_to_f64(&r.midpoint())
    }

    fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }
}

enum NudgeResult {
    Point(Rat),
    NewLo(Rat),
    NewHi(Rat),
}

#[cfg(test)]
mod tests {
    use super::super::{isolate_real_roots, rat};
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
    }

    #[test]
    fn refine_sqrt2() {
        // sqrt(2) isolated in [1, 2], width 1/1000
        let a = RealAlgebraicNumber::from_sign_change(&up(&[-2, 0, 1]), rat(1, 1), rat(2, 1));
        let r = a.refined(&rat(1, 1000));
        assert!(r.width() <= rat(1, 1000));
        assert_eq!(r.cmp_rat(&rat(141421, 100000)), Ordering::Greater);
        assert_eq!(r.cmp_rat(&rat(141422, 100000)), Ordering::Less);
    }

    #[test]
    fn rational_point_roots() {
        let half = RealAlgebraicNumber::from_rational(rat(1, 2));
        assert_eq!(half.width(), rat(0, 1));
        assert_eq!(half.cmp_rat(&rat(1, 2)), Ordering::Equal);
        // -1 from 1 - x^2 collapses to a point under refinement
        let roots = isolate_real_roots(&up(&[1, 0, -1]));
        let r = roots[0].refined(&rat(1, 1 << 20));
        assert_eq!(r.as_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn compare_and_equality() {
        let s2a = RealAlgebraicNumber::from_sign_change(&up(&[-2, 0, 1]), rat(0, 1), rat(3, 2));
        let s2b = RealAlgebraicNumber::from_sign_change(
            &up(&[-2, 0, 1]).mul(&up(&[-3, 0, 1])).squarefree_part(),
            rat(1, 1),
            rat(3, 2),
        );
        assert_eq!(s2a.compare(&s2b), Ordering::Equal);
        let s3 = RealAlgebraicNumber::from_sign_change(&up(&[-3, 0, 1]), rat(1, 1), rat(2, 1));
        assert_eq!(s2a.compare(&s3), Ordering::Less);
        assert_eq!(s3.compare(&s2a), Ordering::Greater);
    }

    #[test]
    fn sign_evaluation() {
        let s2 = RealAlgebraicNumber::from_sign_change(&up(&[-2, 0, 1]), rat(1, 1), rat(2, 1));
        // x^2 - 2 vanishes at sqrt2
        assert_eq!(s2.sign_of(&up(&[-2, 0, 1])), 0);
        // x - 1 is positive there
        assert_eq!(s2.sign_of(&up(&[-1, 1])), 1);
        // x - 2 is negative
        assert_eq!(s2.sign_of(&up(&[-2, 1])), -1);
    }

    #[test]
    fn sign_change_with_root_endpoint() {
        // interval endpoint that is itself a root of the polynomial
        let f = up(&[-2, 0, 1]).mul(&up(&[-1, 1])); // roots 1, +-sqrt2
        let sf = f.squarefree_part();
        // isolate sqrt2 in (1, 2): endpoint 1 is a root of sf
        let a = RealAlgebraicNumber::from_sign_change(&sf, rat(1, 1), rat(2, 1));
        assert_eq!(a.cmp_rat(&rat(7, 5)), Ordering::Greater);
        assert_eq!(a.cmp_rat(&rat(3, 2)), Ordering::Less);
    }
}
