use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact rational arithmetic with division by zero reported as an error.
pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// `⌊√n⌋` for a nonnegative integer.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    Ok(n.sqrt())
}

/// Returns `Some(r)` when `n = r²`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = isqrt(n).ok()?;
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// Panicking constructor for literals in code and tests.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    /// Skips reduction; `num` and `den > 0` must already be coprime.
    pub(crate) fn from_coprime(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive() && num.gcd(&den).is_one());
        Rational(BigRational::new_raw(num, den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    /// `self^exp` for a possibly negative exponent.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::InvalidArgument(format!("exponent {exp} too large")))?;
        let n = num_traits::pow(self.numer().clone(), e as usize);
        let d = num_traits::pow(self.denom().clone(), e as usize);
        // powers of coprime integers stay coprime
        Ok(if exp >= 0 {
            Rational(BigRational::new_raw(n, d))
        } else if n.is_negative() {
            Rational(BigRational::new_raw(-d, -n))
        } else {
            Rational(BigRational::new_raw(d, n))
        })
    }

    /// `2^exp` for any signed exponent.
    pub fn pow2(exp: i64) -> Self {
        let shift = exp.unsigned_abs() as usize;
        let p = BigInt::one() << shift;
        if exp >= 0 {
            Rational::from_integer(p)
        } else {
            Rational(BigRational::new_raw(BigInt::one(), p))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (self.numer().abs() * scale) / self.denom();
        format_scaled(self.is_negative(), &scaled, digits)
    }

    /// Parses a plain decimal literal such as `0.125` or `-3.5` exactly.
    pub fn from_decimal_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::parse(s, "empty decimal"));
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(s, "malformed decimal"));
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| Error::parse(s, "malformed decimal"))?
        };
        if neg {
            num = -num;
        }
        Rational::new(num, num_traits::pow(BigInt::from(10), frac_part.len()))
    }
}

pub(crate) fn format_scaled(negative: bool, scaled: &BigInt, digits: usize) -> String {
    let s = scaled.to_string();
    let sign = if negative && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{s}");
    }
    let padded = format!("{:0>width$}", s, width = digits + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    format!("{sign}{int_part}.{frac_part}")
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| Error::parse(s, "bad numerator"))?;
        let d: BigInt = d.parse().map_err(|_| Error::parse(s, "bad denominator"))?;
        Rational::new(n, d).map_err(|_| Error::parse(s, "zero denominator"))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the primitive types; use `checked_div` otherwise.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}
