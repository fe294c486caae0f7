use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Classical Minkowski `?(x)` by the Farey mediant recursion: walk down the
/// Stern–Brocot tree towards `x`, halving the gap between the endpoint
/// values at each step.
///
/// Uses nothing but rational arithmetic, so it stays an independent check
/// on the α-Lüroth series for the dyadic partition.
pub fn mediant_oracle(x: &Rational, depth: usize) -> Result<Rational> {
    let zero = Rational::zero();
    let one = Rational::one();
    if x < &zero || x > &one {
        return Err(Error::domain(x, "[0, 1]"));
    }
    if x == &zero || x == &one {
        return Ok(x.clone());
    }
    let half = Rational::frac(1, 2);
    // left = 0/1, right = 1/1 as (numerator, denominator) pairs
    let (mut lp, mut lq) = (BigInt::zero(), BigInt::one());
    let (mut rp, mut rq) = (BigInt::one(), BigInt::one());
    let (mut lv, mut rv) = (zero, one);
    for _ in 0..depth {
        let (mp, mq) = (&lp + &rp, &lq + &rq);
        let mv = (&lv + &rv) * &half;
        let m = Rational::new(mp.clone(), mq.clone())?;
        match x.cmp(&m) {
            std::cmp::Ordering::Equal => return Ok(mv),
            std::cmp::Ordering::Less => {
                (rp, rq, rv) = (mp, mq, mv);
            }
            std::cmp::Ordering::Greater => {
                (lp, lq, lv) = (mp, mq, mv);
            }
        }
    }
    Err(Error::DepthExceeded(depth))
}
