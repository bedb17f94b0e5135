//! Real-root isolation by square-free reduction and Descartes' rule with
//! interval bisection, entirely in exact integer arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::algnum::RealAlgebraicNumber;
use super::{Rat, UniPoly};

/// Number of sign variations in a coefficient sequence.
fn sign_variations(c: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for v in c {
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(l) = last {
            if l != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Taylor shift by one: p(x) -> p(x + 1), in place, O(n^2) additions.
fn shift_by_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let add = c[j + 1].clone();
            c[j] += add;
        }
    }
}

/// p(x) -> 2^deg p(x/2): scales roots by 2 while staying integral.
fn scale_half(c: &[BigInt]) -> Vec<BigInt> {
    let n = c.len();
    c.iter()
        .enumerate()
        .map(|(i, v)| v << ((n - 1 - i) as u32))
        .collect()
}

/// Upper bound for the number of roots of `q` in (0,1) by Descartes' rule
/// applied to (1+x)^n q(1/(1+x)).
fn descartes_01(q: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = q.iter().rev().cloned().collect();
    shift_by_one(&mut r);
    sign_variations(&r)
}

/// One isolated root: either an exact rational point or an open interval
/// with a sign change.
#[derive(Debug, Clone)]
enum Isolated {
    Point(Rat),
    Open(Rat, Rat),
}

/// Isolate roots of the square-free integer polynomial `p` in (0, 1),
/// reporting intervals in the coordinates of `p`.
fn isolate_01(p: Vec<BigInt>, lo: Rat, width: Rat, out: &mut Vec<Isolated>) {
    let v = descartes_01(&p);
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push(Isolated::Open(lo.clone(), lo + width));
        return;
    }
    // split at the midpoint
    let left = scale_half(&p);
    let mut right = left.clone();
    shift_by_one(&mut right);
    let half = width / Rat::from_integer(2.into());
    let mid = &lo + &half;
    // exact root at the midpoint shows up as a zero constant term of `right`
    let right = if right[0].is_zero() {
        out.push(Isolated::Point(mid.clone()));
        let mut r = right;
        r.remove(0);
        r
    } else {
        right
    };
    isolate_01(left, lo, half.clone(), out);
    isolate_01(right, mid, half, out);
}

/// All distinct real roots of `f`, each as a `RealAlgebraicNumber`, sorted
/// ascending. The input need not be square-free.
pub fn isolate_real_roots(f: &UniPoly) -> Vec<RealAlgebraicNumber> {
    assert!(!f.is_zero(), "cannot isolate roots of the zero polynomial");
    let sf = f.squarefree_part().primitive();
    if sf.deg() == 0 {
        return Vec::new();
    }
    let mut ints = sf.to_int_primitive();
    // strip a root at the origin
    let mut zero_root = false;
    while ints[0].is_zero() {
        zero_root = true;
        ints.remove(0);
    }
    let stripped = UniPoly::from_int(&ints);
    let mut found: Vec<Isolated> = Vec::new();
    if zero_root {
        found.push(Isolated::Point(Rat::zero()));
    }
    if stripped.deg() > 0 {
        // strict root bound, rounded up to a power of two
        let bound = stripped.cauchy_root_bound() + Rat::one();
        let mut b = Rat::one();
        while b < bound {
            b = b * Rat::from_integer(2.into());
        }
        // positive roots: roots of p(B x) in (0,1)
        let scaled = stripped.scale(&b).to_int_primitive();
        let mut pos: Vec<Isolated> = Vec::new();
        isolate_01(scaled, Rat::zero(), Rat::one(), &mut pos);
        for iso in pos {
            found.push(match iso {
                Isolated::Point(r) => Isolated::Point(r * &b),
                Isolated::Open(l, h) => Isolated::Open(l * &b, h * &b),
            });
        }
        // negative roots: positive roots of p(-B x)
        let negated = stripped.scale(&-b.clone()).to_int_primitive();
        let mut neg: Vec<Isolated> = Vec::new();
        isolate_01(negated, Rat::zero(), Rat::one(), &mut neg);
        for iso in neg {
            found.push(match iso {
                Isolated::Point(r) => Isolated::Point(-(r * &b)),
                Isolated::Open(l, h) => Isolated::Open(-(h * &b), -(l * &b)),
            });
        }
    }
    let mut roots: Vec<RealAlgebraicNumber> = found
        .into_iter()
        .map(|iso| match iso {
            Isolated::Point(r) => RealAlgebraicNumber::from_rational(r),
            Isolated::Open(lo, hi) => RealAlgebraicNumber::from_sign_change(&sf, lo, hi),
        })
        .collect();
    roots.sort_by(|a, b| a.compare(b));
    roots
}

/// Descartes upper bound (exact for 0 and 1) on the number of roots of `p`
/// in the open interval `(a, b)`.
pub(crate) fn descartes_count_upper(p: &UniPoly, a: &Rat, b: &Rat) -> usize {
    let width = b - a;
    let q = p.taylor_shift(a).scale(&width);
    descartes_01(&q.to_int_primitive())
}

/// Exact number of distinct real roots of `f` in the open interval `(a, b)`.
pub fn count_roots_in(f: &UniPoly, a: &Rat, b: &Rat) -> usize {
    assert!(a < b);
    let sf = f.squarefree_part();
    isolate_real_roots(&sf)
        .into_iter()
        .filter(|r| r.cmp_rat(a) == std::cmp::Ordering::Greater && r.cmp_rat(b) == std::cmp::Ordering::Less)
        .count()
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;
    use std::cmp::Ordering;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
    }

    #[test]
    fn unit_interval_roots() {
        // 1 - x^2: roots -1, 1
        let roots = isolate_real_roots(&up(&[1, 0, -1]));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].cmp_rat(&rat(-1, 1)), Ordering::Equal);
        assert_eq!(roots[1].cmp_rat(&rat(1, 1)), Ordering::Equal);
    }

    #[test]
    fn cubic_roots() {
        // x^3 - 2x = x(x^2-2): roots -sqrt2, 0, sqrt2
        let roots = isolate_real_roots(&up(&[0, -2, 0, 1]));
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1].cmp_rat(&rat(0, 1)), Ordering::Equal);
        // middle checks for the irrational pair
        assert_eq!(roots[0].cmp_rat(&rat(-3, 2)), Ordering::Greater);
        assert_eq!(roots[0].cmp_rat(&rat(-1, 1)), Ordering::Less);
        assert_eq!(roots[2].cmp_rat(&rat(7, 5)), Ordering::Greater);
        assert_eq!(roots[2].cmp_rat(&rat(3, 2)), Ordering::Less);
    }

    #[test]
    fn two_quartics_slice() {
        // (1 - x^4)(1 - (x-1/2)^4) has 4 real roots: -1, -1/2, 1, 3/2
        let a = up(&[1, 0, 0, 0, -1]);
        let shifted = up(&[0, 1]).sub(&up(&[1]).mul_scalar(&rat(1, 2)));
        let b = UniPoly::one().sub(&shifted.pow(4));
        let f = a.mul(&b);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 4);
        let expect = [rat(-1, 1), rat(-1, 2), rat(1, 1), rat(3, 2)];
        for (r, e) in roots.iter().zip(expect.iter()) {
            assert_eq!(r.cmp_rat(e), Ordering::Equal);
        }
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x-1)^3 (x+2)^2
        let f = up(&[-1, 1]).pow(3).mul(&up(&[2, 1]).pow(2));
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn isolating_intervals_disjoint_with_sign_change() {
        // wilkinson-ish: roots at 1..8
        let mut f = UniPoly::one();
        for k in 1..=8 {
            f = f.mul(&up(&[-k, 1]));
        }
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 8);
        for w in roots.windows(2) {
            let (_, hi) = w[0].interval();
            let (lo, _) = w[1].interval();
            assert!(hi <= lo, "intervals must be disjoint");
        }
    }

    #[test]
    fn count_in_interval() {
        let f = up(&[0, -2, 0, 1]); // roots -sqrt2, 0, sqrt2
        assert_eq!(count_roots_in(&f, &rat(-1, 1), &rat(2, 1)), 2);
        assert_eq!(count_roots_in(&f, &rat(1, 1), &rat(2, 1)), 1);
        assert_eq!(count_roots_in(&f, &rat(2, 1), &rat(3, 1)), 0);
    }
}
