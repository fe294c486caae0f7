use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{exact_sqrt, QuadraticSurd, Rational, Value};

/// Largest denominator drawn by [`random_rational`].
pub const MAX_DENOMINATOR: i64 = 1_000_000;

/// Seeded source of test points in `[0, 1]`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Uniform point `k/2^53` of `[0, 1]`.
pub fn random_dyadic(s: &mut Sampler) -> Rational {
    let k: u64 = s.rng.gen_range(0..=1u64 << 53);
    Rational::from_integer(k) * Rational::pow2(-53)
}

/// `p/q` with `q` uniform in `1..=10^6` and `p` uniform in `0..=q`.
pub fn random_rational(s: &mut Sampler) -> Rational {
    let q = s.rng.gen_range(1..=MAX_DENOMINATOR);
    let p = s.rng.gen_range(0..=q);
    Rational::frac(p, q)
}

/// `(p + √d)/q` in `(0, 1)` with `d ≤ 1000` non-square and `|p|, |q| ≤ 40`.
pub fn random_surd(s: &mut Sampler) -> QuadraticSurd {
    loop {
        let d: i64 = s.rng.gen_range(2..=1000);
        if exact_sqrt(&BigInt::from(d)).is_some() {
            continue;
        }
        let p: i64 = s.rng.gen_range(-40..=40);
        let q: i64 = s.rng.gen_range(-40..=40);
        if q == 0 {
            continue;
        }
        let x = QuadraticSurd::new(p, d, q).expect("d is not a square");
        let v = Value::Surd(x.clone());
        if v > Value::zero() && v < Value::one() {
            return x;
        }
    }
}
