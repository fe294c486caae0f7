use crate::dynamics::{gauss_step, luroth_step};
use crate::error::Result;
use crate::exactnum::Value;
use crate::partition::Partition;
use crate::qmark::q_eval_rational;

use super::sampling::{random_rational, Sampler};

/// Number of seeded rationals `x` for which `L_α(?_α(x)) ≠ ?_α(G(x))`.
pub fn conjugation_residual(part: &Partition, n_samples: usize, seed: u64) -> Result<usize> {
    let mut sampler = Sampler::new(seed);
    let mut failures = 0;
    for _ in 0..n_samples {
        let x = random_rational(&mut sampler);
        let lhs = luroth_step(part, &Value::Rational(q_eval_rational(part, &x)?))?;
        let gx = gauss_step(&Value::Rational(x))?;
        let rhs = q_eval_rational(part, gx.as_rational().expect("G keeps rationals rational"))?;
        if lhs != Value::Rational(rhs) {
            failures += 1;
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_failures() {
        for part in Partition::builtin() {
            assert_eq!(conjugation_residual(&part, 200, 7).unwrap(), 0, "{part}");
        }
        assert_eq!(conjugation_residual(&Partition::Power(2), 1, 99).unwrap(), 0);
    }
}
