//! Regular continued fractions `x = 1/(a_1 + 1/(a_2 + ...))` of points of the
//! unit interval: finite for rationals, eventually periodic for quadratic
//! surds.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{floor_parts, QuadraticSurd, Rational, Value};

/// Default cap on visited `(P, Q)` states during period detection.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Digits `[a_1, ..., a_m; b_1, ..., b_p]`: a preperiod followed by a period
/// repeated forever. An empty period means a finite expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ContinuedFraction {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

/// Integer 2×2 matrix `[[a, b], [c, d]]` acting as `y ↦ (a·y + b)/(c·y + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    /// Composes with `y ↦ 1/(digit + y)` on the right.
    pub fn push_digit(&mut self, digit: u64) {
        let k = BigInt::from(digit);
        let b = &self.a + &k * &self.b;
        let d = &self.c + &k * &self.d;
        self.a = std::mem::replace(&mut self.b, b);
        self.c = std::mem::replace(&mut self.d, d);
    }

    pub fn of_digits(digits: &[u64]) -> Self {
        let mut m = Mobius::identity();
        for &a in digits {
            m.push_digit(a);
        }
        m
    }

    pub fn apply(&self, y: &Value) -> Result<Value> {
        y.mobius(&self.a, &self.b, &self.c, &self.d)
    }
}

fn digit_from(a: BigInt) -> Result<u64> {
    a.to_u64().ok_or(Error::DigitOverflow)
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if preperiod.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::InvalidArgument("continued fraction digits must be ≥ 1".into()));
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    pub fn finite(digits: Vec<u64>) -> Result<Self> {
        Self::new(digits, Vec::new())
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.preperiod.is_empty() && self.period.is_empty()
    }

    /// All digits in order; infinite when the period is non-empty.
    pub fn digits(&self) -> impl Iterator<Item = u64> + '_ {
        self.preperiod.iter().chain(self.period.iter().cycle()).copied()
    }

    /// Canonical finite expansion of a rational in `[0, 1]`.
    ///
    /// `0` gives the empty expansion and `1` gives `[1]`; every other value
    /// ends in a digit ≥ 2.
    pub fn of_rational(x: &Rational) -> Result<Self> {
        if x.is_negative() || x > &Rational::one() {
            return Err(Error::domain(x, "[0, 1]"));
        }
        let mut digits = Vec::new();
        let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
        while !n.is_zero() {
            let (a, r) = d.div_rem(&n);
            digits.push(digit_from(a)?);
            d = std::mem::replace(&mut n, r);
        }
        Ok(ContinuedFraction { preperiod: digits, period: Vec::new() })
    }

    pub fn of_surd(x: &QuadraticSurd) -> Result<Self> {
        Self::of_surd_with_cap(x, DEFAULT_STATE_CAP)
    }

    /// Eventually periodic expansion of a surd in `(0, 1)`, by the `(P, Q)`
    /// recursion on `x = (P + √D)/Q` with `Q | D − P²`.
    pub fn of_surd_with_cap(x: &QuadraticSurd, cap: usize) -> Result<Self> {
        if x.cmp_rational(&Rational::zero()).is_le() || x.cmp_rational(&Rational::one()).is_ge() {
            return Err(Error::domain(x, "(0, 1)"));
        }
        let dd = x.d().clone();
        let (mut p, mut q) = (x.p().clone(), x.q().clone());
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut digits = Vec::new();
        loop {
            if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                let period = digits.split_off(start);
                let cf = ContinuedFraction { preperiod: digits, period };
                return Ok(cf.canonicalize());
            }
            if seen.len() >= cap {
                return Err(Error::StateCapExceeded(cap));
            }
            seen.insert((p.clone(), q.clone()), digits.len());
            // 1/x = (−P + √D)/Q' with Q' = (D − P²)/Q
            let q1 = (&dd - &p * &p) / &q;
            let neg_p = -p;
            let a = floor_parts(&neg_p, &dd, &q1);
            p = neg_p - &a * &q1;
            q = q1;
            digits.push(digit_from(a)?);
        }
    }

    /// Applies `[.., a_n] = [.., a_n − 1, 1]` to end finite expansions in a
    /// digit ≥ 2, and reduces a periodic expansion to minimal period and
    /// minimal preperiod.
    pub fn canonicalize(&self) -> Self {
        let mut pre = self.preperiod.clone();
        if self.period.is_empty() {
            if pre.len() >= 2 && pre[pre.len() - 1] == 1 {
                pre.pop();
                *pre.last_mut().expect("non-empty") += 1;
            }
            return ContinuedFraction { preperiod: pre, period: Vec::new() };
        }
        let len = self.period.len();
        let p = (1..=len)
            .find(|&p| len.is_multiple_of(p) && (p..len).all(|i| self.period[i] == self.period[i % p]))
            .unwrap_or(len);
        let mut period = self.period[..p].to_vec();
        while pre.last().is_some() && pre.last() == period.last() {
            pre.pop();
            period.rotate_right(1);
        }
        ContinuedFraction { preperiod: pre, period }
    }

    /// First `n` convergents `p_k/q_k`; a finite expansion stops at its value.
    pub fn convergents(&self, n: usize) -> Vec<Rational> {
        let (mut p_prev, mut p) = (BigInt::one(), BigInt::zero());
        let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
        self.digits()
            .take(n)
            .map(|a| {
                let a = BigInt::from(a);
                let p_next = &a * &p + &p_prev;
                let q_next = &a * &q + &q_prev;
                p_prev = std::mem::replace(&mut p, p_next);
                q_prev = std::mem::replace(&mut q, q_next);
                Rational::new(p.clone(), q.clone()).expect("positive denominator")
            })
            .collect()
    }

    /// Exact value: a rational for finite expansions, a surd otherwise.
    pub fn eval(&self) -> Value {
        if self.period.is_empty() {
            let m = Mobius::of_digits(&self.preperiod);
            // value at the empty tail y = 0 is b/d
            Value::Rational(Rational::new(m.b, m.d).expect("d ≥ 1"))
        } else {
            Value::Surd(self.periodic_to_surd().expect("non-empty period"))
        }
    }

    /// Solves the fixed-point quadratic of the period, takes its root in
    /// `(0, 1)`, then applies the preperiod as a Möbius map.
    pub fn periodic_to_surd(&self) -> Result<QuadraticSurd> {
        if self.period.is_empty() {
            return Err(Error::InvalidArgument("expansion has no period".into()));
        }
        let Mobius { a, b, c, d } = Mobius::of_digits(&self.period);
        // g = (a·g + b)/(c·g + d)  ⇔  c·g² + (d − a)·g − b = 0
        let disc = (&d - &a) * (&d - &a) + BigInt::from(4) * &b * &c;
        let tail = QuadraticSurd::new(&a - &d, disc, BigInt::from(2) * &c)?;
        let pre = Mobius::of_digits(&self.preperiod);
        tail.mobius(&pre.a, &pre.b, &pre.c, &pre.d)
    }

    /// Drops the first digit, rotating the period when there is no
    /// preperiod left.
    pub fn shift_digits(&self) -> Result<Self> {
        let mut out = self.clone();
        if !out.preperiod.is_empty() {
            out.preperiod.remove(0);
        } else if !out.period.is_empty() {
            out.period.rotate_left(1);
        } else {
            return Err(Error::EmptyExpansion);
        }
        Ok(out)
    }
}

/// Expansion of a rational or surd in the unit interval.
pub fn cf_of_value(x: &Value) -> Result<ContinuedFraction> {
    match x {
        Value::Rational(r) => ContinuedFraction::of_rational(r),
        Value::Surd(s) => ContinuedFraction::of_surd(s),
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[u64]) -> fmt::Result {
    for (i, a) in digits.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_digits(f, &self.preperiod)?;
        if !self.period.is_empty() {
            f.write_str(";")?;
            write_digits(f, &self.period)?;
        }
        f.write_str("]")
    }
}

pub(crate) fn parse_digit_list(s: &str, input: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::parse(input, "digits must be positive integers")))
        .collect()
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// `[a1,a2,...]` or `[a1,...;b1,...]`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(s, "expected [...]"))?;
        let (pre, per) = body.split_once(';').unwrap_or((body, ""));
        let cf = ContinuedFraction::new(parse_digit_list(pre, s)?, parse_digit_list(per, s)?)
            .map_err(|_| Error::parse(s, "digits must be ≥ 1"))?;
        Ok(cf)
    }
}
