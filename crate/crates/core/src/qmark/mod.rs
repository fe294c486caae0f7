//! The generalized question-mark function `?_α = Lür_α⁻¹ ∘ cf` and its
//! inverse.
//!
//! For a digit sequence `a_1, a_2, ...` the α-Lüroth series is
//!
//! ```text
//! t(a_1) − Δ(a_1)·t(a_2) + Δ(a_1)Δ(a_2)·t(a_3) − ...
//! ```
//!
//! Feeding it continued fraction digits gives `?_α`; feeding it the digits
//! read off an α-Lüroth orbit inverts the expansion. Finite sums cover
//! rationals; eventually periodic digits close up as a geometric series, so
//! surds land on rationals.

mod eval;
mod mediant;
mod real;
mod series;

pub use eval::{q_eval, q_eval_rational, q_eval_surd, q_inverse_rational};
pub use mediant::mediant_oracle;
pub use real::{q_eval_real, RealEstimate, RealInterval, DEFAULT_MAX_DIGITS};
pub use series::{
    block_summary, luroth_digits_of, luroth_series_eval, series_value, BlockSummary, LurothDigits,
};
