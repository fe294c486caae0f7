use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{floor_parts, QuadraticSurd, Rational, Value};
use crate::partition::Partition;

/// Default budget of continued fraction digits for [`q_eval_real`].
pub const DEFAULT_MAX_DIGITS: usize = 200;

/// A point of `[0, 1]` known to lie in `[lo, hi]·2^(−bits)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl RealInterval {
    fn checked(lo: BigInt, hi: BigInt, bits: u32) -> Result<Self> {
        let top = BigInt::one() << bits;
        if lo.is_negative() || hi > top || lo > hi {
            return Err(Error::domain(format!("[{lo}, {hi}]/2^{bits}"), "[0, 1]"));
        }
        Ok(RealInterval { lo, hi, bits })
    }

    /// Outward-rounded enclosure of a rational; exact when dyadic.
    pub fn from_rational(x: &Rational, bits: u32) -> Result<Self> {
        let scaled = x * Rational::pow2(bits as i64);
        Self::checked(scaled.floor(), scaled.ceil(), bits)
    }

    pub fn from_surd(x: &QuadraticSurd, bits: u32) -> Result<Self> {
        let scale = BigInt::one() << bits;
        let lo = floor_parts(&(x.p() * &scale), &(x.d() * &scale * &scale), x.q());
        Self::checked(lo.clone(), lo + 1, bits)
    }

    pub fn from_value(x: &Value, bits: u32) -> Result<Self> {
        match x {
            Value::Rational(r) => Self::from_rational(r, bits),
            Value::Surd(s) => Self::from_surd(s, bits),
        }
    }

    /// A decimal literal such as `0.61803398874989` taken at face value.
    pub fn from_decimal(s: &str, bits: u32) -> Result<Self> {
        Self::from_rational(&Rational::from_decimal_str(s)?, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> Rational {
        Rational::from_integer(self.lo.clone()) * Rational::pow2(-(self.bits as i64))
    }

    pub fn upper(&self) -> Rational {
        Rational::from_integer(self.hi.clone()) * Rational::pow2(-(self.bits as i64))
    }
}

/// An approximation of `?_α(x)` with `|value − ?_α(x)| ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEstimate {
    pub value: Rational,
    pub bound: Rational,
    /// Continued fraction digits consumed.
    pub digits: usize,
}

impl RealEstimate {
    pub fn contains(&self, exact: &Rational) -> bool {
        (&self.value - exact).abs() <= self.bound
    }
}

/// Evaluates `?_α` on an enclosure of `x`, reading continued fraction digits
/// by interval Gauss steps at the enclosure's precision.
///
/// After `k` digits `?_α(x) = S_k + (−1)^k·P_k·?_α(G^k x)` with
/// `?_α(G^k x) ∈ [0, 1]`, and `?_α(G^k x) ≤ t(a)` whenever the next digit is
/// at least `a`. A digit is accepted only when the whole enclosure agrees on
/// it; evaluation stops once the remaining uncertainty is below `tol`.
pub fn q_eval_real(
    part: &Partition,
    x: &RealInterval,
    tol: &Rational,
    max_digits: usize,
) -> Result<RealEstimate> {
    if !tol.is_positive() {
        return Err(Error::domain(tol, "(0, ∞)"));
    }
    let bits = x.bits;
    let unit = BigInt::one() << bits;
    let unit_sq = BigInt::one() << (2 * bits);
    let (mut lo, mut hi) = (x.lo.clone(), x.hi.clone());
    let mut acc = Partial::new();

    loop {
        if hi.is_zero() {
            return Ok(acc.finish(Rational::zero(), Rational::zero()));
        }
        if &acc.product < tol {
            return Ok(acc.finish(Rational::zero(), Rational::one()));
        }
        // 1/x ∈ [y_lo, y_hi]·2^(−bits)
        let y_lo = &unit_sq / &hi;
        let a_min = &y_lo >> bits;
        if let Some(width) = acc.tail_width(part, &a_min, tol)? {
            return Ok(acc.finish(Rational::zero(), width));
        }
        let y_hi = if lo.is_positive() { Some(unit_sq.div_ceil(&lo)) } else { None };
        let y_hi = match y_hi {
            Some(y) if (&y >> bits) == a_min => y,
            _ => {
                // the enclosure straddles a branch point, so bracket by monotonicity
                let scale = Rational::pow2(-(bits as i64));
                let sub_tol = tol.checked_div(&(&acc.product * Rational::frac(4, 1)))?;
                let lower = &Rational::from_integer(lo.clone()) * &scale;
                let upper = &Rational::from_integer(hi.clone()) * &scale;
                let (r_lo, _) = rational_bracket(part, &lower, &sub_tol, max_digits)?;
                let (_, r_hi) = rational_bracket(part, &upper, &sub_tol, max_digits)?;
                let est = acc.finish(r_lo, r_hi);
                if &est.bound > tol {
                    return Err(Error::Precision { digits: est.digits, width: (&est.bound * Rational::frac(2, 1)).to_decimal(40) });
                }
                return Ok(est);
            }
        };
        if acc.digits >= max_digits {
            return Err(Error::Precision { digits: acc.digits, width: acc.product.to_decimal(40) });
        }
        acc.push(part, &a_min)?;
        let shift = &a_min * &unit;
        lo = y_lo - &shift;
        hi = y_hi - shift;
    }
}

/// Running `S_k`, `P_k` and sign of the series after `k` digits.
struct Partial {
    sum: Rational,
    product: Rational,
    positive: bool,
    digits: usize,
}

impl Partial {
    fn new() -> Self {
        Partial { sum: Rational::zero(), product: Rational::one(), positive: true, digits: 0 }
    }

    fn push(&mut self, part: &Partition, a: &BigInt) -> Result<()> {
        let a = u64::try_from(a).map_err(|_| Error::DigitOverflow)?;
        let term = &self.product * part.t(a)?;
        self.sum = if self.positive { &self.sum + term } else { &self.sum - term };
        self.product = &self.product * part.delta(a)?;
        self.positive = !self.positive;
        self.digits += 1;
        Ok(())
    }

    /// Some width `w` with `P_k·w ≤ tol` bounding the tail, once the next
    /// digit is known to be at least `a_min`.
    fn tail_width(&self, part: &Partition, a_min: &BigInt, tol: &Rational) -> Result<Option<Rational>> {
        // an index past u64 means no digit we can represent reaches the cut
        let Ok(cut) = part.index_below(&tol.checked_div(&self.product)?) else {
            return Ok(None);
        };
        if a_min >= &BigInt::from(cut) {
            return Ok(Some(part.t(cut)?));
        }
        Ok(None)
    }

    /// Estimate for a tail `?_α(G^k x) ∈ [r_lo, r_hi]`.
    fn finish(&self, r_lo: Rational, r_hi: Rational) -> RealEstimate {
        let (a, b) = (&self.product * r_lo, &self.product * r_hi);
        let (lo, hi) = if self.positive { (&self.sum + a, &self.sum + b) } else { (&self.sum - b, &self.sum - a) };
        let half = Rational::frac(1, 2);
        RealEstimate { value: (&lo + &hi) * &half, bound: (hi - lo) * half, digits: self.digits }
    }
}

/// Lower and upper bounds on `?_α(x)` for an exact rational, read off its
/// continued fraction and truncated once the tail is below `tol`.
fn rational_bracket(part: &Partition, x: &Rational, tol: &Rational, max_digits: usize) -> Result<(Rational, Rational)> {
    let mut acc = Partial::new();
    let mut x = x.clone();
    let (r_lo, r_hi) = loop {
        if x.is_zero() {
            break (Rational::zero(), Rational::zero());
        }
        if &acc.product < tol || acc.digits >= max_digits {
            break (Rational::zero(), Rational::one());
        }
        let y = x.recip()?;
        let a = y.floor();
        if let Some(width) = acc.tail_width(part, &a, tol)? {
            break (Rational::zero(), width);
        }
        acc.push(part, &a)?;
        x = y - Rational::from_integer(a);
    };
    let est = acc.finish(r_lo, r_hi);
    Ok((&est.value - &est.bound, &est.value + &est.bound))
}
