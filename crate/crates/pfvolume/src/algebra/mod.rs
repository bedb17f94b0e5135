//! Exact arithmetic foundation: rationals, sparse multivariate polynomials,
//! univariate polynomials, rational functions, differential operators,
//! resultant elimination, square-free parts, real-root isolation and real
//! algebraic numbers.
//!
//! Everything here is immutable after construction and all operations are
//! pure functions, so values can be shared freely across threads.

mod algnum;
mod diffop;
mod gcd;
mod intervals;
mod parse;
mod poly;
mod ratfunc;
mod resultant;
mod roots;
mod unipoly;

pub use algnum::RealAlgebraicNumber;
pub use diffop::DifferentialOperator;
pub use gcd::{gcd_with_small, poly_gcd, squarefree_part};
pub use intervals::RatInterval;
pub use parse::{parse_polynomial, print_polynomial, ParseError};
pub use poly::{Monomial, SparsePolynomial, VarSet};
pub use ratfunc::ParamRationalFunction;
pub use resultant::{eliminant_step, resultant, sylvester_resultant, ResultantError};
pub use roots::{count_roots_in, isolate_real_roots};
pub use unipoly::{FieldOps, FieldPoly, UniPoly};

use num_bigint::BigInt;
use num_rational::BigRational;

/// The coefficient field: arbitrary-precision rationals, always stored
/// reduced with a positive denominator.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for small integers as rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub(crate) fn rat_pow(base: &Rat, exp: u32) -> Rat {
    use num_traits::One;
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}
