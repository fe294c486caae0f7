//! Seeded sampling experiments around `?_α`.
//!
//! Everything here is deterministic for a fixed seed: samples are drawn
//! sequentially from a ChaCha stream and evaluated in parallel with results
//! collected in draw order.

mod conjugation;
mod measure;
mod sampling;
mod singularity;

pub use conjugation::conjugation_residual;
pub use measure::{log2_1p, measure_compare, MeasureTable};
pub use sampling::{random_dyadic, random_rational, random_surd, Sampler};
pub use singularity::{singularity_stats, SingularityReport, SMALL_QUOTIENT};
