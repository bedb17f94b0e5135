//! Certified volume computation for compact convex bodies cut out by concave
//! polynomials with rational coefficients.
//!
//! The library realizes volumes as solutions of univariate linear differential
//! operators (obtained by creative telescoping of a rational integrand) and
//! evaluates those solutions with rigorous ball arithmetic, so every reported
//! volume comes with a certified error radius.
//!
//! Module layout:
//! - [`algebra`]: big rationals, sparse multivariate polynomials, resultants,
//!   real-root isolation, real algebraic numbers, differential operators.
//! - [`geometry`]: body specifications, deformation, critical-value selection.
//! - [`telescoping`]: telescoper/certificate search with exact verification.
//! - [`numerics`]: arbitrary-precision ball arithmetic and rigorous solving of
//!   the computed operators (transition matrices, Frobenius expansions).
//! - [`pipeline`]: the recursive volume algorithms and the Monte Carlo check.
//! - [`cli`]: command-line entry points, body-spec files, report emission.

pub mod algebra;
pub mod cli;
pub mod geometry;
pub mod numerics;
pub mod pipeline;
pub mod telescoping;

pub use algebra::{
    DifferentialOperator, ParamRationalFunction, Rat, RealAlgebraicNumber, SparsePolynomial,
};
pub use geometry::{ConvexBodySpec, CriticalValueResult, DeformedProduct};
pub use numerics::{Ball, SolutionSpec, TransitionMatrix};
pub use pipeline::{VolumeReport, VolumeRequest};
pub use telescoping::{AnsatzConfig, TelescoperResult};
