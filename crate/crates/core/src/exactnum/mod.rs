//! Exact numeric substrate: big rationals, quadratic surds and the tagged
//! [`Value`] that the dynamics and evaluation code work over.

mod rational;
mod surd;
mod value;

pub use rational::{exact_sqrt, isqrt, rat_arith, ArithOp, Rational};
pub use surd::{surd_normalize, QuadraticSurd};
pub use value::{surd_compare, Value};

pub(crate) use surd::floor_parts;
