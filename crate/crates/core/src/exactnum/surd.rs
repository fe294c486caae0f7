use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{exact_sqrt, format_scaled, isqrt, Rational};
use super::Value;
use crate::error::{Error, Result};

/// Exact value `(p + √d)/q` of degree exactly two.
///
/// `d` is never a perfect square and `q` always divides `d − p²`. The radical
/// carries an implicit `+` sign, so a value with `−√d` has `p` and `q`
/// negated.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    p: BigInt,
    d: BigInt,
    q: BigInt,
}

/// Builds `(p + √d)/q`, returning a [`Rational`] when `d` is a perfect square
/// and otherwise a surd rescaled so that `q | d − p²`.
pub fn surd_normalize(p: BigInt, d: BigInt, q: BigInt) -> Result<Value> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if d.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    if let Some(root) = exact_sqrt(&d) {
        return Ok(Value::Rational(Rational::new(p + root, q)?));
    }
    let (mut p, mut d, mut q) = (p, d, q);
    if !(&d - &p * &p).is_multiple_of(&q) {
        let a = q.abs();
        p *= &a;
        d *= &q * &q;
        q *= &a;
    }
    let mut s = QuadraticSurd { p, d, q };
    s.remove_common_factor();
    Ok(Value::Surd(s))
}

impl QuadraticSurd {
    /// Like [`surd_normalize`] but rejects a perfect-square radicand.
    pub fn new(p: impl Into<BigInt>, d: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, d, q) = (p.into(), d.into(), q.into());
        match surd_normalize(p, d.clone(), q)? {
            Value::Surd(s) => Ok(s),
            Value::Rational(_) => Err(Error::InvalidArgument(format!(
                "radicand {d} is a perfect square"
            ))),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn floor(&self) -> BigInt {
        floor_parts(&self.p, &self.d, &self.q)
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd { p: self.p.clone(), d: self.d.clone(), q: -&self.q }
    }

    /// Image under `x ↦ (a·x + b)/(c·x + e)` with integer coefficients and
    /// nonzero determinant. Degree two is preserved.
    pub fn mobius(&self, a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt) -> Result<Self> {
        let det = a * e - b * c;
        if det.is_zero() {
            return Err(Error::InvalidArgument("singular Möbius transformation".into()));
        }
        // (a(p+√d) + bq) / (c(p+√d) + eq), rationalized by the conjugate of the denominator.
        let u = a * &self.p + b * &self.q;
        let v = c * &self.p + e * &self.q;
        let den = &v * &v - c * c * &self.d;
        let n0 = &u * &v - a * c * &self.d;
        let n1 = &self.q * &det;
        let (p, q) = if n1.is_negative() { (-n0, -den) } else { (n0, den) };
        let d = &n1 * &n1 * &self.d;
        match surd_normalize(p, d, q)? {
            Value::Surd(s) => Ok(s),
            Value::Rational(_) => unreachable!("Möbius image of an irrational is irrational"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (p, d, q) = (
            self.p.to_f64().unwrap_or(f64::NAN),
            self.d.to_f64().unwrap_or(f64::NAN),
            self.q.to_f64().unwrap_or(f64::NAN),
        );
        if p.is_finite() && d.is_finite() && q.is_finite() {
            (p + d.sqrt()) / q
        } else {
            // Large parts: go through a 64-digit decimal.
            self.to_decimal(64).parse().unwrap_or(f64::NAN)
        }
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let neg = self.cmp_rational(&Rational::zero()) == Ordering::Less;
        let x = if neg { self.neg() } else { self.clone() };
        let scaled = floor_parts(&(&x.p * &scale), &(&x.d * &scale * &scale), &x.q);
        format_scaled(neg, &scaled, digits)
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        compare_parts(
            (&self.p, &self.d, &self.q),
            (r.numer(), &BigInt::zero(), r.denom()),
        )
    }

    /// Canonical key: `(p/q, d/q², sign q)` determines the value uniquely.
    fn key(&self) -> (BigRational, BigRational, bool) {
        (
            BigRational::new(self.p.clone(), self.q.clone()),
            BigRational::new(self.d.clone(), &self.q * &self.q),
            self.q.is_positive(),
        )
    }

    // Divides out the largest k with k | p, k | q, k² | d that keeps q | d − p².
    // Factors of the common gcd are found by trial division below 10^5; a
    // larger composite cofactor is only taken whole.
    fn remove_common_factor(&mut self) {
        let e = (&self.d - &self.p * &self.p) / &self.q;
        let mut g = self.p.gcd(&self.q).gcd(&e);
        if g.is_one() {
            return;
        }
        let mut k = BigInt::one();
        let mut f = BigInt::from(2u32);
        let limit = BigInt::from(100_000u32);
        while &f * &f <= g && f < limit {
            if g.is_multiple_of(&f) {
                let mut d_rest = self.d.clone();
                while g.is_multiple_of(&f) {
                    g /= &f;
                    let f2 = &f * &f;
                    if d_rest.is_multiple_of(&f2) {
                        d_rest /= f2;
                        k *= &f;
                    } else {
                        // exhaust f from g without raising k
                        while g.is_multiple_of(&f) {
                            g /= &f;
                        }
                        break;
                    }
                }
            }
            f += 1u32;
        }
        if g > BigInt::one() && self.d.is_multiple_of(&(&g * &g)) {
            k *= g;
        }
        if !k.is_one() {
            self.p /= &k;
            self.d /= &k * &k;
            self.q /= &k;
        }
    }
}

pub(crate) fn floor_parts(p: &BigInt, d: &BigInt, q: &BigInt) -> BigInt {
    let s = isqrt(d).expect("nonnegative radicand");
    let exact = &s * &s == *d;
    if q.is_positive() {
        (p + s).div_floor(q)
    } else {
        let f = (p + &s).div_floor(&-q);
        // an exact root makes (p+s)/|q| rational: floor(-y) = -ceil(y)
        if exact && (p + &s).is_multiple_of(q) {
            -f
        } else {
            -f - 1
        }
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `a + b·√m`.
fn sign2(a: &BigInt, b: &BigInt, m: &BigInt) -> i8 {
    let sa = sign(a);
    let sb = if m.is_zero() { 0 } else { sign(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * m)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Sign of `a + b·√m + c·√n`.
fn sign3(a: &BigInt, b: &BigInt, m: &BigInt, c: &BigInt, n: &BigInt) -> i8 {
    let s_alpha = sign2(a, b, m);
    let s_beta = if n.is_zero() { 0 } else { sign(c) };
    if s_beta == 0 {
        return s_alpha;
    }
    if s_alpha == 0 || s_alpha == s_beta {
        return s_beta;
    }
    // |α| vs |β| through α² − β² = (a² + b²m − c²n) + 2ab√m
    let lhs = a * a + b * b * m - c * c * n;
    let two_ab = BigInt::from(2) * a * b;
    match sign2(&lhs, &two_ab, m) {
        1 => s_alpha,
        -1 => s_beta,
        _ => 0,
    }
}

/// Exact order of `(p1 + √d1)/q1` and `(p2 + √d2)/q2`.
pub(crate) fn compare_parts(x: (&BigInt, &BigInt, &BigInt), y: (&BigInt, &BigInt, &BigInt)) -> Ordering {
    let (p1, d1, q1) = x;
    let (p2, d2, q2) = y;
    // (x − y)·q1·q2 = (p1q2 − p2q1) + q2√d1 − q1√d2
    let s = sign3(&(p1 * q2 - p2 * q1), q2, d1, &-q1, d2) * sign(q1) * sign(q2);
    s.cmp(&0)
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for QuadraticSurd {}

impl Hash for QuadraticSurd {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_parts((&self.p, &self.d, &self.q), (&other.p, &other.d, &other.q))
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+sqrt({}))/{}", self.p, self.d, self.q)
    }
}
