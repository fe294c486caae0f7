use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::partition::Partition;
use crate::qmark::{q_eval_real, RealInterval};

use super::sampling::{random_dyadic, Sampler};

/// Quotients below this count as small.
pub const SMALL_QUOTIENT: f64 = 0.1;

const DIGIT_BUDGET: usize = 1000;

/// Symmetric difference quotients of `?_α` at seeded uniform points.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    pub partition: Partition,
    pub h_values: Vec<Rational>,
    pub medians: Vec<Rational>,
    /// Per `h`, the fraction of quotients below [`SMALL_QUOTIENT`].
    pub small_fraction: Vec<f64>,
    pub sample_count: usize,
    pub seed: u64,
}

impl SingularityReport {
    pub fn check(&self) -> bool {
        self.medians.len() == self.h_values.len()
            && self.small_fraction.len() == self.h_values.len()
            && self.medians.iter().all(|m| !m.is_negative())
    }

    pub fn medians_decreasing(&self) -> bool {
        self.medians.windows(2).all(|w| w[1] < w[0])
    }

    pub fn small_fraction_nondecreasing(&self) -> bool {
        self.small_fraction.windows(2).all(|w| w[1] >= w[0])
    }
}

/// `(?_α(x+h) − ?_α(x−h))/(2h)`, with `x ± h` clipped to `[0, 1]` and the
/// denominator shrunk to match. Each value is taken to within `h²`.
pub fn difference_quotient(part: &Partition, x: &Rational, h: &Rational, precision: u32) -> Result<Rational> {
    let (zero, one) = (Rational::zero(), Rational::one());
    let lo = (x - h).max(zero);
    let hi = (x + h).min(one);
    let tol = h * h;
    let at = |p: &Rational| -> Result<Rational> {
        Ok(q_eval_real(part, &RealInterval::from_rational(p, precision)?, &tol, DIGIT_BUDGET)?.value)
    };
    let diff = at(&hi)? - at(&lo)?;
    let q = diff.checked_div(&(hi - lo))?;
    // estimates of nearly equal values may cross by up to 2h²
    Ok(if q.is_negative() { Rational::zero() } else { q })
}

pub fn singularity_stats(
    part: &Partition,
    n_samples: usize,
    h_values: &[Rational],
    precision: u32,
    seed: u64,
) -> Result<SingularityReport> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    if precision < 64 {
        return Err(Error::InvalidArgument(format!("precision {precision} is below 64 bits")));
    }
    let floor = Rational::frac(1, 1_000_000);
    if h_values.iter().any(|h| h < &floor || h > &Rational::one()) {
        return Err(Error::InvalidArgument("step sizes must lie in [1e-6, 1]".into()));
    }
    if h_values.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("step sizes must be strictly decreasing".into()));
    }
    let mut sampler = Sampler::new(seed);
    let xs: Vec<Rational> = (0..n_samples).map(|_| random_dyadic(&mut sampler)).collect();
    let threshold = Rational::frac(1, 10);
    let mut medians = Vec::with_capacity(h_values.len());
    let mut small_fraction = Vec::with_capacity(h_values.len());
    for h in h_values {
        let mut quotients: Vec<Rational> = xs
            .par_iter()
            .map(|x| difference_quotient(part, x, h, precision))
            .collect::<Result<_>>()?;
        quotients.sort();
        let small = quotients.iter().filter(|q| **q < threshold).count();
        medians.push(median(&quotients));
        small_fraction.push(small as f64 / n_samples as f64);
    }
    Ok(SingularityReport {
        partition: part.clone(),
        h_values: h_values.to_vec(),
        medians,
        small_fraction,
        sample_count: n_samples,
        seed,
    })
}

fn median(sorted: &[Rational]) -> Rational {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2].clone()
    } else {
        (&sorted[n / 2 - 1] + &sorted[n / 2]) * Rational::frac(1, 2)
    }
}
