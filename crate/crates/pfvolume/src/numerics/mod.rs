//! Rigorous arbitrary-precision numerics: ball arithmetic, certified
//! transition matrices for linear ODEs, Frobenius expansions at regular
//! singular points, and solution fitting from point values.

mod ball;
mod float;

pub use ball::{ln2, Ball};
pub use float::Float;

pub struct SolutionSpec;
pub struct TransitionMatrix;
