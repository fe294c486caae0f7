use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use regex::Regex;

use super::surd::compare_parts;
use super::{surd_normalize, QuadraticSurd, Rational};
use crate::error::{Error, Result};

/// A rational or a quadratic surd: the exact points of the unit interval
/// this crate can move around under the Gauss and α-Lüroth maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Rational(Rational),
    Surd(QuadraticSurd),
}

/// Exact trichotomy between two values of either kind.
pub fn surd_compare(x: &Value, y: &Value) -> Ordering {
    x.cmp(y)
}

impl Value {
    pub fn zero() -> Self {
        Value::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Value::Rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Rational(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Value::Rational(r) => Some(r),
            Value::Surd(_) => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            Value::Surd(s) => Some(s),
            Value::Rational(_) => None,
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            Value::Rational(r) => r.floor(),
            Value::Surd(s) => s.floor(),
        }
    }

    /// `(a·x + b)/(c·x + e)` with integer coefficients.
    pub fn mobius(&self, a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt) -> Result<Value> {
        match self {
            Value::Rational(r) => {
                let num = a * r.numer() + b * r.denom();
                let den = c * r.numer() + e * r.denom();
                Ok(Value::Rational(Rational::new(num, den)?))
            }
            Value::Surd(s) => Ok(Value::Surd(s.mobius(a, b, c, e)?)),
        }
    }

    /// `offset + slope·x` with rational coefficients.
    pub fn affine(&self, offset: &Rational, slope: &Rational) -> Result<Value> {
        match self {
            Value::Rational(r) => Ok(Value::Rational(offset + slope * r)),
            Value::Surd(s) => {
                if slope.is_zero() {
                    return Ok(Value::Rational(offset.clone()));
                }
                let l = offset.denom().lcm(slope.denom());
                let a = slope.numer() * (&l / slope.denom());
                let b = offset.numer() * (&l / offset.denom());
                Ok(Value::Surd(s.mobius(&a, &b, &BigInt::zero(), &l)?))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Rational(r) => r.to_f64(),
            Value::Surd(s) => s.to_f64(),
        }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            Value::Rational(r) => r.to_decimal(digits),
            Value::Surd(s) => s.to_decimal(digits),
        }
    }

    fn parts(&self) -> (BigInt, BigInt, BigInt) {
        match self {
            Value::Rational(r) => (r.numer().clone(), BigInt::zero(), r.denom().clone()),
            Value::Surd(s) => (s.p().clone(), s.d().clone(), s.q().clone()),
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rational(r)
    }
}

impl From<QuadraticSurd> for Value {
    fn from(s: QuadraticSurd) -> Self {
        Value::Surd(s)
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            (Value::Surd(a), Value::Rational(b)) => a.cmp_rational(b),
            (Value::Rational(a), Value::Surd(b)) => b.cmp_rational(a).reverse(),
            _ => {
                let (x, y) = (self.parts(), other.parts());
                compare_parts((&x.0, &x.1, &x.2), (&y.0, &y.1, &y.2))
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => r.fmt(f),
            Value::Surd(s) => s.fmt(f),
        }
    }
}

fn surd_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^(?P<open>\()?\s*(?P<p>[+-]?\d+)?\s*(?P<sign>[+-])?\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*(?P<close>\))?\s*(?:/\s*(?P<q>[+-]?\d+))?$",
        )
        .expect("valid regex")
    })
}

impl FromStr for Value {
    type Err = Error;

    /// Accepts `num/den`, integers, and surd literals such as
    /// `(-1+sqrt(5))/2`, `(3-sqrt(5))/2`, `sqrt(2)-1` is not accepted but
    /// `-1+sqrt(2)` is.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('\u{2212}', "-");
        if !t.contains("sqrt") {
            return t.parse::<Rational>().map(Value::Rational).map_err(|_| Error::parse(s, "expected num/den or a surd literal"));
        }
        let caps = surd_regex().captures(&t).ok_or_else(|| Error::parse(s, "expected (p+sqrt(d))/q"))?;
        if caps.name("open").is_some() != caps.name("close").is_some() {
            return Err(Error::parse(s, "unbalanced parentheses"));
        }
        let has_p = caps.name("p").is_some();
        if has_p && caps.name("sign").is_none() {
            return Err(Error::parse(s, "missing sign before sqrt"));
        }
        if has_p && caps.name("q").is_some() && caps.name("open").is_none() {
            return Err(Error::parse(s, "parenthesize the numerator before dividing"));
        }
        let int = |name: &str, default: i64| -> Result<BigInt> {
            match caps.name(name) {
                Some(m) => m.as_str().parse().map_err(|_| Error::parse(s, "bad integer")),
                None => Ok(BigInt::from(default)),
            }
        };
        let p = int("p", 0)?;
        let d = int("d", 0)?;
        let q = int("q", 1)?;
        let minus = caps.name("sign").is_some_and(|m| m.as_str() == "-");
        if q.is_zero() {
            return Err(Error::parse(s, "zero denominator"));
        }
        // (p − √d)/q = (−p + √d)/(−q)
        let (p, q) = if minus { (-p, -q) } else { (p, q) };
        surd_normalize(p, d, q)
    }
}
