//! Closed-form partitions `1 = t_1 > t_2 > ... → 0` of the unit interval into
//! the branches `(t_{j+1}, t_j]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Partition {
    /// `t_j = 2^(1−j)`; yields the classical Minkowski function.
    Dyadic,
    /// `t_j = 1/j`; the alternating Lüroth expansion.
    Harmonic,
    /// `t_j = r^(j−1)` with `0 < r < 1`.
    Geometric(Rational),
    /// `t_j = 1/j^s` with `s ≥ 1`.
    Power(u32),
}

impl Partition {
    pub fn geometric(ratio: Rational) -> Result<Self> {
        if !ratio.is_positive() || ratio >= Rational::one() {
            return Err(Error::InvalidPartition(format!("geometric ratio {ratio} not in (0, 1)")));
        }
        Ok(Partition::Geometric(ratio))
    }

    pub fn power(exponent: u32) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::InvalidPartition("power exponent must be ≥ 1".into()));
        }
        Ok(Partition::Power(exponent))
    }

    /// The four families exercised by the experiments and acceptance runs.
    pub fn builtin() -> Vec<Partition> {
        vec![
            Partition::Dyadic,
            Partition::Harmonic,
            Partition::Geometric(Rational::frac(1, 3)),
            Partition::Power(2),
        ]
    }

    pub fn t(&self, j: u64) -> Result<Rational> {
        if j == 0 {
            return Err(Error::InvalidArgument("partition index starts at 1".into()));
        }
        Ok(match self {
            Partition::Dyadic => Rational::pow2(1 - exponent(j)?),
            Partition::Harmonic => Rational::new(1, j)?,
            Partition::Geometric(r) => r.pow(exponent(j)? - 1)?,
            Partition::Power(s) => Rational::new(1, num_traits::pow(BigInt::from(j), *s as usize))?,
        })
    }

    /// Branch length `t_j − t_{j+1}`.
    pub fn delta(&self, j: u64) -> Result<Rational> {
        if j == 0 {
            return Err(Error::InvalidArgument("partition index starts at 1".into()));
        }
        let j1 = BigInt::from(j) + 1u32;
        // closed forms; each numerator is coprime to its denominator
        Ok(match self {
            Partition::Dyadic => Rational::pow2(-exponent(j)?),
            Partition::Harmonic => Rational::from_coprime(BigInt::one(), BigInt::from(j) * j1),
            Partition::Geometric(r) => {
                let k = exponent(j)? - 1;
                let (a, b) = (r.numer(), r.denom());
                let num = num_traits::pow(a.clone(), k as usize) * (b - a);
                Rational::from_coprime(num, num_traits::pow(b.clone(), k as usize + 1))
            }
            Partition::Power(s) => {
                let s = *s as usize;
                let (lo, hi) = (num_traits::pow(BigInt::from(j), s), num_traits::pow(j1, s));
                Rational::from_coprime(&hi - &lo, lo * hi)
            }
        })
    }

    /// Smallest `j` with `t_j ≤ eps`.
    pub fn index_below(&self, eps: &Rational) -> Result<u64> {
        if !eps.is_positive() {
            return Err(Error::domain(eps, "(0, ∞)"));
        }
        if eps >= &Rational::one() {
            return Ok(1);
        }
        // t_j ≤ eps ⇔ 1/t_j ≥ ceil(1/eps) whenever 1/t_j is an integer
        let c = eps.recip()?.ceil();
        let j = match self {
            Partition::Harmonic => c,
            Partition::Power(s) => {
                let r = c.nth_root(*s);
                if num_traits::pow(r.clone(), *s as usize) < c {
                    r + 1
                } else {
                    r
                }
            }
            Partition::Dyadic => BigInt::from((c - 1u32).bits() + 1),
            Partition::Geometric(r) => BigInt::from(geometric_exponent(r, eps)? + 1),
        };
        j.to_u64().ok_or_else(|| Error::InvalidArgument(format!("index below {eps} exceeds 64 bits")))
    }

    /// The unique `j` with `t_{j+1} < x ≤ t_j`, for `0 < x ≤ 1`.
    pub fn branch_index(&self, x: &Value) -> Result<u64> {
        if x <= &Value::zero() || x > &Value::one() {
            return Err(Error::domain(x, "(0, 1]"));
        }
        let below = |j: u64| -> Result<bool> { Ok(x <= &Value::Rational(self.t(j)?)) };
        let upper = self.index_below(&rational_lower_bound(x))?.saturating_add(1);
        // exponential search for a bracket, capped by the closed-form bound
        let (mut lo, mut hi) = (1u64, 2u64.min(upper));
        while hi < upper && below(hi)? {
            lo = hi;
            hi = hi.saturating_mul(2).min(upper);
        }
        if hi == upper && below(hi)? {
            unreachable!("t({hi}) is strictly below x");
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }
}

fn exponent(j: u64) -> Result<i64> {
    i64::try_from(j).map_err(|_| Error::InvalidArgument(format!("index {j} too large")))
}

// Smallest k ≥ 0 with r^k ≤ eps, from a floating estimate corrected exactly.
fn geometric_exponent(r: &Rational, eps: &Rational) -> Result<i64> {
    let estimate = ln_rational(eps) / ln_rational(r);
    let mut k = (estimate.floor() as i64 - 2).max(0);
    while &r.pow(k)? > eps {
        k += 1;
    }
    while k > 0 && &r.pow(k - 1)? <= eps {
        k -= 1;
    }
    Ok(k)
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.to_f64().unwrap_or(f64::MAX).ln()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().unwrap_or(f64::MAX).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn ln_rational(x: &Rational) -> f64 {
    ln_big(x.numer()) - ln_big(x.denom())
}

// A positive rational ≤ x for 0 < x.
fn rational_lower_bound(x: &Value) -> Rational {
    match x {
        Value::Rational(r) => r.clone(),
        Value::Surd(_) => {
            let mut k = 8i64;
            loop {
                let scaled = x.affine(&Rational::zero(), &Rational::pow2(k)).expect("nonzero slope");
                let f = scaled.floor();
                if f >= BigInt::one() {
                    return Rational::from_integer(f) * Rational::pow2(-k);
                }
                k *= 2;
            }
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Partition::Dyadic => f.write_str("dyadic"),
            Partition::Harmonic => f.write_str("harmonic"),
            Partition::Geometric(r) => write!(f, "geometric:{r}"),
            Partition::Power(s) => write!(f, "power:{s}"),
        }
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.split_once(':') {
            None if t == "dyadic" => Ok(Partition::Dyadic),
            None if t == "harmonic" => Ok(Partition::Harmonic),
            Some(("geometric", r)) => Partition::geometric(r.parse()?),
            Some(("power", e)) => {
                Partition::power(e.trim().parse().map_err(|_| Error::parse(s, "power exponent must be a positive integer"))?)
            }
            _ => Err(Error::parse(s, "expected dyadic, harmonic, geometric:NUM/DEN or power:S")),
        }
    }
}
