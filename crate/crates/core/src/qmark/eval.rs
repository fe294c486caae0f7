use crate::contfrac::ContinuedFraction;
use crate::error::{Error, Result};
use crate::exactnum::{QuadraticSurd, Rational, Value};
use crate::partition::Partition;

use super::series::{block_summary, luroth_digits_of, series_value};

/// `?_α(x)` over the canonical finite continued fraction of `x ∈ [0, 1]`.
pub fn q_eval_rational(part: &Partition, x: &Rational) -> Result<Rational> {
    let cf = ContinuedFraction::of_rational(x)?;
    Ok(block_summary(part, cf.preperiod())?.sum)
}

/// `?_α(x)` for a surd in `(0, 1)`, summing the periodic tail in closed form.
pub fn q_eval_surd(part: &Partition, x: &QuadraticSurd) -> Result<Rational> {
    let cf = ContinuedFraction::of_surd(x)?;
    series_value(part, cf.preperiod(), cf.period())
}

pub fn q_eval(part: &Partition, x: &Value) -> Result<Rational> {
    match x {
        Value::Rational(r) => q_eval_rational(part, r),
        Value::Surd(s) => q_eval_surd(part, s),
    }
}

/// `?_α⁻¹(y) = cf⁻¹(Lür_α(y))`: a rational when the α-Lüroth digits of `y`
/// terminate, a quadratic surd when they are eventually periodic.
pub fn q_inverse_rational(part: &Partition, y: &Rational, max_steps: usize) -> Result<Value> {
    let digits = luroth_digits_of(part, y, max_steps)?;
    let cf = ContinuedFraction::new(digits.preperiod, digits.period)
        .map_err(|_| Error::InvalidArgument("zero digit in α-Lüroth expansion".into()))?;
    Ok(cf.eval())
}
