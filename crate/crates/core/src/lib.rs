//! Exact arithmetic for the family of generalized Minkowski question-mark
//! functions `?_α`, one for every α-Lüroth partition of the unit interval.
//!
//! `?_α` sends the continued fraction digits of `x` to the point whose
//! α-Lüroth digits are the same sequence. With the dyadic partition it is the
//! classical Minkowski function. For the rational partitions provided here it
//! maps rationals and quadratic surds to rationals, which this crate computes
//! exactly.
//!
//! * [`exactnum`]: big rationals, quadratic surds, exact comparison and floor.
//! * [`contfrac`]: finite and eventually periodic continued fractions.
//! * [`partition`]: closed-form partitions `1 = t_1 > t_2 > ... → 0`.
//! * [`dynamics`]: the Gauss map, the α-Lüroth maps and exact orbits.
//! * [`qmark`]: evaluation, inversion, digit machinery and the mediant oracle.
//! * [`analysis`]: sampling experiments (difference quotients, distribution
//!   functions, conjugation residuals).

pub mod analysis;
pub mod contfrac;
pub mod dynamics;
mod error;
pub mod exactnum;
pub mod partition;
pub mod qmark;

pub use contfrac::ContinuedFraction;
pub use error::{Error, Result};
pub use exactnum::{QuadraticSurd, Rational, Value};
pub use partition::Partition;
