//! The Gauss map `G(x) = 1/x − ⌊1/x⌋` and the α-Lüroth maps
//! `L_α(x) = (t_j − x)/(t_j − t_{j+1})` on `(t_{j+1}, t_j]`, applied exactly to
//! rationals and quadratic surds.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Value};
use crate::partition::Partition;

/// Which interval map to iterate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalMap {
    Gauss,
    Luroth(Partition),
}

fn check_unit(x: &Value) -> Result<()> {
    if x < &Value::zero() || x > &Value::one() {
        return Err(Error::domain(x, "[0, 1]"));
    }
    Ok(())
}

/// Branch of `x` in the partition `(1/(n+1), 1/n]`, i.e. `⌊1/x⌋`.
pub fn gauss_branch(x: &Value) -> Result<u64> {
    check_unit(x)?;
    if x.is_zero() {
        return Err(Error::domain(x, "(0, 1]"));
    }
    let inv = x.mobius(&BigInt::zero(), &BigInt::one(), &BigInt::one(), &BigInt::zero())?;
    inv.floor().to_u64().ok_or(Error::DigitOverflow)
}

pub fn gauss_step(x: &Value) -> Result<Value> {
    check_unit(x)?;
    if x.is_zero() {
        return Ok(Value::zero());
    }
    let (zero, one) = (BigInt::zero(), BigInt::one());
    let inv = x.mobius(&zero, &one, &one, &zero)?;
    let a = inv.floor();
    inv.mobius(&one, &-a, &zero, &one)
}

/// `L_α(x)`, using the half-open branches `(t_{j+1}, t_j]`, so `L_α(t_j) = 0`.
pub fn luroth_step(part: &Partition, x: &Value) -> Result<Value> {
    check_unit(x)?;
    if x.is_zero() {
        return Ok(Value::zero());
    }
    let j = part.branch_index(x)?;
    let t = part.t(j)?;
    let inv_delta = part.delta(j)?.recip()?;
    x.affine(&(&t * &inv_delta), &-inv_delta)
}

impl IntervalMap {
    pub fn step(&self, x: &Value) -> Result<Value> {
        match self {
            IntervalMap::Gauss => gauss_step(x),
            IntervalMap::Luroth(p) => luroth_step(p, x),
        }
    }

    /// Index of the partition element containing `x > 0`.
    pub fn branch(&self, x: &Value) -> Result<u64> {
        match self {
            IntervalMap::Gauss => gauss_branch(x),
            IntervalMap::Luroth(p) => p.branch_index(x),
        }
    }
}

/// Visited points of an exact orbit. When a repeat was found,
/// `points[preperiod_length + period_length] == points[preperiod_length]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub points: Vec<Value>,
    pub preperiod_length: usize,
    pub period_length: Option<usize>,
}

impl OrbitRecord {
    pub fn is_closed(&self) -> bool {
        self.period_length.is_some()
    }

    /// Rows `step,value,approx` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,value,approx\n");
        for (i, x) in self.points.iter().enumerate() {
            let _ = writeln!(out, "{i},{x},{}", x.to_f64());
        }
        out
    }
}

/// Iterates `map` from `x0` for at most `max_steps` steps, stopping at the
/// first exact repeat. An orbit without a repeat is returned open.
pub fn orbit(map: &IntervalMap, x0: &Value, max_steps: usize) -> Result<OrbitRecord> {
    check_unit(x0)?;
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be ≥ 1".into()));
    }
    let mut seen: HashMap<Value, usize> = HashMap::from([(x0.clone(), 0)]);
    let mut points = vec![x0.clone()];
    for _ in 0..max_steps {
        let next = map.step(points.last().expect("non-empty"))?;
        if let Some(&i) = seen.get(&next) {
            let period = points.len() - i;
            points.push(next);
            return Ok(OrbitRecord { points, preperiod_length: i, period_length: Some(period) });
        }
        seen.insert(next.clone(), points.len());
        points.push(next);
    }
    Ok(OrbitRecord { points, preperiod_length: 0, period_length: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Periodicity {
    /// `T^{preperiod + period}(x) = T^{preperiod}(x)`.
    Preperiodic { preperiod: usize, period: usize },
    /// Proven never to repeat.
    NotPreperiodic,
    /// No repeat within the step budget.
    Inconclusive,
}

/// Decides pre-periodicity exactly. An α-Lüroth orbit of a surd never
/// repeats: every iterate `L^n` is affine with rational coefficients and slope
/// of modulus > 1, so `L^{n+m}(x) = L^n(x)` would force `L^n(x)` rational.
pub fn is_preperiodic(map: &IntervalMap, x0: &Value, max_steps: usize) -> Result<Periodicity> {
    if matches!(map, IntervalMap::Luroth(_)) && matches!(x0, Value::Surd(_)) {
        check_unit(x0)?;
        return Ok(Periodicity::NotPreperiodic);
    }
    let rec = orbit(map, x0, max_steps)?;
    Ok(match rec.period_length {
        Some(period) => Periodicity::Preperiodic { preperiod: rec.preperiod_length, period },
        None => Periodicity::Inconclusive,
    })
}

/// Convenience wrapper for rationals.
pub fn rational_orbit(map: &IntervalMap, x0: &Rational, max_steps: usize) -> Result<OrbitRecord> {
    orbit(map, &Value::Rational(x0.clone()), max_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::ContinuedFraction;
    use proptest::prelude::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_step(&v("2/5")).unwrap(), v("1/2"));
        assert_eq!(gauss_step(&v("0")).unwrap(), v("0"));
        assert_eq!(gauss_step(&v("1")).unwrap(), v("0"));
        let g = v("(-1+sqrt(5))/2");
        assert_eq!(gauss_step(&g).unwrap(), g);
        assert!(gauss_step(&v("3/2")).is_err());
    }

    #[test]
    fn luroth_examples() {
        assert_eq!(luroth_step(&Partition::Harmonic, &v("2/5")).unwrap(), v("3/5"));
        assert_eq!(luroth_step(&Partition::Dyadic, &v("2/5")).unwrap(), v("2/5"));
        for p in Partition::builtin() {
            assert_eq!(luroth_step(&p, &v("0")).unwrap(), v("0"));
            for j in 1..6 {
                let t = Value::Rational(p.t(j).unwrap());
                assert_eq!(luroth_step(&p, &t).unwrap(), v("0"));
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let rec = orbit(&IntervalMap::Gauss, &v("2/3"), 10).unwrap();
        assert_eq!(rec.points, vec![v("2/3"), v("1/2"), v("0"), v("0")]);
        assert_eq!((rec.preperiod_length, rec.period_length), (2, Some(1)));

        let rec = orbit(&IntervalMap::Gauss, &v("(-1+sqrt(2))/1"), 10).unwrap();
        assert_eq!((rec.preperiod_length, rec.period_length), (0, Some(1)));

        let rec = orbit(&IntervalMap::Luroth(Partition::Harmonic), &v("2/3"), 10).unwrap();
        assert_eq!((rec.preperiod_length, rec.period_length), (0, Some(1)));
        assert!(orbit(&IntervalMap::Gauss, &v("1/2"), 0).is_err());
    }

    #[test]
    fn preperiodic_examples() {
        assert_eq!(
            is_preperiodic(&IntervalMap::Gauss, &v("(-1+sqrt(5))/2"), 5).unwrap(),
            Periodicity::Preperiodic { preperiod: 0, period: 1 }
        );
        assert!(matches!(
            is_preperiodic(&IntervalMap::Luroth(Partition::Harmonic), &v("2/5"), 50).unwrap(),
            Periodicity::Preperiodic { .. }
        ));
        assert_eq!(
            is_preperiodic(&IntervalMap::Gauss, &v("1/2"), 5).unwrap(),
            Periodicity::Preperiodic { preperiod: 1, period: 1 }
        );
        assert_eq!(
            is_preperiodic(&IntervalMap::Luroth(Partition::Dyadic), &v("(-1+sqrt(2))/1"), 5).unwrap(),
            Periodicity::NotPreperiodic
        );
        assert_eq!(
            is_preperiodic(&IntervalMap::Gauss, &v("1/1000"), 0).ok(),
            None
        );
        assert_eq!(
            is_preperiodic(&IntervalMap::Luroth(Partition::Harmonic), &v("3/1000003"), 1).unwrap(),
            Periodicity::Inconclusive
        );
    }

    #[test]
    fn csv_rows() {
        let rec = orbit(&IntervalMap::Gauss, &v("2/3"), 10).unwrap();
        let csv = rec.to_csv();
        assert!(csv.starts_with("step,value,approx\n0,2/3,0.666"));
        assert_eq!(csv.lines().count(), 5);
    }

    // discriminant of the primitive integer minimal polynomial of (p+√d)/q
    fn discriminant(x: &Value) -> BigInt {
        use num_integer::Integer;
        let s = x.as_surd().unwrap();
        let (p, d, q) = (s.p(), s.d(), s.q());
        let (a, b, c) = (q * q, BigInt::from(-2) * p * q, p * p - d);
        let g = a.gcd(&b).gcd(&c);
        let (a, b, c) = (a / &g, b / &g, c / &g);
        &b * &b - BigInt::from(4) * a * c
    }

    #[test]
    fn surd_orbit_keeps_discriminant() {
        for lit in ["(-2+sqrt(7))/1", "(1+sqrt(13))/6", "(-3+sqrt(5))/-2", "(5+sqrt(1001))/40"] {
            let mut x = v(lit);
            let disc = discriminant(&x);
            for _ in 0..25 {
                x = gauss_step(&x).unwrap();
                assert_eq!(discriminant(&x), disc, "{lit}");
            }
        }
    }

    proptest! {
        #[test]
        fn gauss_itinerary_is_cf(q in 2u64..1_000_000, seed in any::<u64>()) {
            let p = 1 + seed % (q - 1);
            let x = Rational::new(p, q).unwrap();
            let cf = ContinuedFraction::of_rational(&x).unwrap();
            let mut y = Value::Rational(x.clone());
            for &a in cf.preperiod() {
                prop_assert_eq!(gauss_branch(&y).unwrap(), a);
                let next = gauss_step(&y).unwrap();
                // exactness: denominator of G(y) is the numerator of y
                if let (Value::Rational(a0), Value::Rational(a1)) = (&y, &next) {
                    prop_assert!(a1.denom() <= a0.numer());
                }
                y = next;
            }
            prop_assert!(y.is_zero());
        }

        #[test]
        fn cf_of_gauss_image_is_shift(q in 2u64..1_000_000, seed in any::<u64>()) {
            let p = 1 + seed % (q - 1);
            let x = Rational::new(p, q).unwrap();
            let cf = ContinuedFraction::of_rational(&x).unwrap();
            let gx = gauss_step(&Value::Rational(x)).unwrap();
            let cf_g = ContinuedFraction::of_rational(gx.as_rational().unwrap()).unwrap();
            prop_assert_eq!(cf_g, cf.shift_digits().unwrap().canonicalize());
        }

        #[test]
        fn luroth_denominator_bound(q in 2u64..100_000, seed in any::<u64>(), k in 0usize..4) {
            let p = 1 + seed % (q - 1);
            let part = &Partition::builtin()[k];
            let x = Rational::new(p, q).unwrap();
            let xv = Value::Rational(x.clone());
            let j = part.branch_index(&xv).unwrap();
            let y = luroth_step(part, &xv).unwrap();
            let y = y.as_rational().unwrap();
            prop_assert!(y >= &Rational::zero() && y <= &Rational::one());
            let branch_den = part.t(j).unwrap().denom() * part.delta(j).unwrap().numer()
                * part.t(j + 1).unwrap().denom();
            prop_assert!(y.denom() <= &(x.denom() * branch_den));
        }
    }
}
