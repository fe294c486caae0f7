use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::partition::Partition;
use crate::qmark::q_eval_rational;

/// Bits carried by the Gauss distribution values.
pub const GAUSS_BITS: u32 = 128;

/// `?_α(t)` against the Gauss distribution function `log₂(1+t)` on the grid
/// `t = k/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureTable {
    pub partition: Partition,
    pub grid: Vec<Rational>,
    pub q_values: Vec<Rational>,
    /// `log₂(1+t)` to within `2^-GAUSS_BITS`.
    pub gauss_values: Vec<Rational>,
    pub gaps: Vec<Rational>,
    pub max_abs_gap: f64,
}

impl MeasureTable {
    /// Whether `q_values` increase strictly from 0 to 1.
    pub fn check(&self) -> bool {
        let q = &self.q_values;
        q.first().is_some_and(Rational::is_zero)
            && q.last().is_some_and(Rational::is_one)
            && q.windows(2).all(|w| w[0] < w[1])
    }

    /// The gap at grid point `t`, if `t` is on the grid.
    pub fn gap_at(&self, t: &Rational) -> Option<&Rational> {
        self.grid.iter().position(|g| g == t).map(|i| &self.gaps[i])
    }
}

pub fn measure_compare(part: &Partition, grid_size: u64) -> Result<MeasureTable> {
    if grid_size < 2 {
        return Err(Error::InvalidArgument(format!("grid size {grid_size} is below 2")));
    }
    let n = i64::try_from(grid_size).map_err(|_| Error::InvalidArgument("grid size too large".into()))?;
    let grid: Vec<Rational> = (0..=n).map(|k| Rational::frac(k, n)).collect();
    let rows: Vec<(Rational, Rational)> = grid
        .par_iter()
        .map(|t| Ok((q_eval_rational(part, t)?, log2_1p(t, GAUSS_BITS)?)))
        .collect::<Result<_>>()?;
    let (q_values, gauss_values): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let gaps: Vec<Rational> = q_values.iter().zip(&gauss_values).map(|(q, g)| (q - g).abs()).collect();
    let max_abs_gap = gaps.iter().max().map_or(0.0, Rational::to_f64);
    Ok(MeasureTable { partition: part.clone(), grid, q_values, gauss_values, gaps, max_abs_gap })
}

/// `log₂(1+t)` for `t ∈ [0, 1]`, rounded to a multiple of `2^-bits` and
/// accurate to within one such unit.
///
/// Uses `ln(1+t) = 2·atanh(t/(2+t))` and `ln 2 = 2·atanh(1/3)` in fixed point.
pub fn log2_1p(t: &Rational, bits: u32) -> Result<Rational> {
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::domain(t, "[0, 1]"));
    }
    let guard = bits + 32;
    let (a, b) = (t.numer().clone(), t.denom().clone());
    let num = atanh_fixed(&a, &(&b * 2u32 + &a), guard);
    let den = atanh_fixed(&BigInt::one(), &BigInt::from(3), guard);
    // num/den scaled by 2^bits, rounded to nearest
    let scaled = ((num << (bits + 1)) / &den + 1u32) >> 1u32;
    Ok(Rational::from_integer(scaled) * Rational::pow2(-(bits as i64)))
}

/// `atanh(a/b)·2^bits` for `0 ≤ a/b ≤ 1/3`, truncated, within a few units.
fn atanh_fixed(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    let mut power = (BigInt::one() << bits) * a / b;
    let (a2, b2) = (a * a, b * b);
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = power * &a2 / &b2;
        k += 2;
    }
    sum
}
