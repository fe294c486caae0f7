use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::contfrac::{parse_digit_list, ContinuedFraction};
use crate::dynamics::luroth_step;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, Value};
use crate::partition::Partition;

/// Alternating block sum `S(w)` and block product `P(w) = Π Δ(w_j)` of a
/// finite digit word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSummary {
    pub sum: Rational,
    pub product: Rational,
    pub length: usize,
}

pub fn block_summary(part: &Partition, word: &[u64]) -> Result<BlockSummary> {
    let mut sum = Rational::zero();
    let mut product = Rational::one();
    for (n, &a) in word.iter().enumerate() {
        if a == 0 {
            return Err(Error::InvalidArgument("digits must be ≥ 1".into()));
        }
        let term = &product * part.t(a)?;
        sum = if n % 2 == 0 { sum + term } else { sum - term };
        product = product * part.delta(a)?;
    }
    Ok(BlockSummary { sum, product, length: word.len() })
}

/// Value of the α-Lüroth series over `preperiod` followed by `period`
/// repeated forever:
/// `S(a) + (−1)^m·P(a)·S(b) / (1 − (−1)^p·P(b))`.
pub fn series_value(part: &Partition, preperiod: &[u64], period: &[u64]) -> Result<Rational> {
    let head = block_summary(part, preperiod)?;
    if period.is_empty() {
        return Ok(head.sum);
    }
    let cycle = block_summary(part, period)?;
    // fixed point V = S(b) + (−1)^p P(b) V of the purely periodic tail
    let ratio = if period.len().is_multiple_of(2) { cycle.product } else { -cycle.product };
    let tail = cycle.sum.checked_div(&(Rational::one() - ratio))?;
    let scaled = head.product * tail;
    Ok(if preperiod.len().is_multiple_of(2) { head.sum + scaled } else { head.sum - scaled })
}

/// Itinerary of a point under `L_α`: finite when the orbit reaches 0,
/// otherwise eventually periodic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LurothDigits {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl LurothDigits {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if preperiod.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::InvalidArgument("digits must be ≥ 1".into()));
        }
        Ok(LurothDigits { preperiod, period })
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Reads the same digits as a continued fraction.
    pub fn as_continued_fraction(&self) -> ContinuedFraction {
        ContinuedFraction::new(self.preperiod.clone(), self.period.clone()).expect("digits ≥ 1")
    }
}

impl From<&ContinuedFraction> for LurothDigits {
    fn from(cf: &ContinuedFraction) -> Self {
        LurothDigits { preperiod: cf.preperiod().to_vec(), period: cf.period().to_vec() }
    }
}

impl fmt::Display for LurothDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_continued_fraction().fmt(f)
    }
}

impl FromStr for LurothDigits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(s, "expected [...]"))?;
        let (pre, per) = body.split_once(';').unwrap_or((body, ""));
        LurothDigits::new(parse_digit_list(pre, s)?, parse_digit_list(per, s)?)
            .map_err(|_| Error::parse(s, "digits must be ≥ 1"))
    }
}

/// `a_k = branch_index(L_α^{k−1}(y))`, stopping at 0 or at the first exact
/// repeat. Exceeding `max_steps` is reported as [`Error::Inconclusive`].
pub fn luroth_digits_of(part: &Partition, y: &Rational, max_steps: usize) -> Result<LurothDigits> {
    if y.is_negative() || y > &Rational::one() {
        return Err(Error::domain(y, "[0, 1]"));
    }
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut x = Value::Rational(y.clone());
    loop {
        let r = x.as_rational().expect("rational orbit").clone();
        if r.is_zero() {
            return Ok(LurothDigits { preperiod: digits, period: Vec::new() });
        }
        if let Some(&start) = seen.get(&r) {
            let period = digits.split_off(start);
            return Ok(LurothDigits { preperiod: digits, period });
        }
        if digits.len() >= max_steps {
            return Err(Error::Inconclusive(max_steps));
        }
        seen.insert(r, digits.len());
        digits.push(part.branch_index(&x)?);
        x = luroth_step(part, &x)?;
    }
}

/// `Lür_α⁻¹`: the point with the given α-Lüroth digits.
pub fn luroth_series_eval(part: &Partition, digits: &LurothDigits) -> Result<Rational> {
    series_value(part, &digits.preperiod, &digits.period)
}
