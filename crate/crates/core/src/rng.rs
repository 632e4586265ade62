//! Seeded random streams and exact sampling from rational weights.
//!
//! Every trial draws from its own ChaCha stream, addressed by
//! `(seed, trial)`; ChaCha is counter-based, so streams are independent of
//! each other and of the order in which trials run.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_1977;

pub type TrialRng = ChaCha8Rng;

/// The stream for trial `trial` under `seed`.
pub fn substream(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniform real in `[0, 1)` whose base-2⁶⁴ digits are drawn on demand.
///
/// Comparisons against rationals are exact: digits are generated until the
/// order is decided, so sampling through this type reproduces rational
/// probabilities without rounding.
#[derive(Debug, Clone, Default)]
pub struct LazyUniform {
    digits: Vec<u64>,
}

impl LazyUniform {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from an already-drawn leading digit.
    pub fn with_leading(digit: u64) -> Self {
        LazyUniform {
            digits: vec![digit],
        }
    }

    fn digit<R: RngCore>(&mut self, i: usize, rng: &mut R) -> u64 {
        while self.digits.len() <= i {
            self.digits.push(rng.next_u64());
        }
        self.digits[i]
    }

    /// Exact test `u < q`.
    pub fn less_than<R: RngCore>(&mut self, q: &BigRational, rng: &mut R) -> bool {
        if !q.is_positive() {
            return false;
        }
        if *q >= BigRational::one() {
            return true;
        }
        let den: BigUint = q.denom().magnitude().clone();
        let mut rem: BigUint = q.numer().magnitude().clone();
        let base = BigUint::one() << 64u32;
        for i in 0.. {
            let (digit, r) = (&rem * &base).div_rem(&den);
            let digit = digit.to_u64().expect("digit below 2^64");
            let ud = self.digit(i, rng);
            if ud != digit {
                return ud < digit;
            }
            if r.is_zero() {
                // remaining digits of q are zero, so u >= q
                return false;
            }
            rem = r;
        }
        unreachable!()
    }
}

/// Index `k` with probability `weights[k]`, exactly. Weights must be
/// non-negative and sum to one.
pub fn sample_exact<R: RngCore>(weights: &[BigRational], u: &mut LazyUniform, rng: &mut R) -> usize {
    let mut cumulative = BigRational::zero();
    for (k, w) in weights.iter().enumerate() {
        cumulative += w;
        if u.less_than(&cumulative, rng) {
            return k;
        }
    }
    debug_assert_eq!(cumulative, BigRational::one());
    weights.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::Rng;

    fn dyadic(num: u64, bits: u32) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(BigUint::one() << bits))
    }

    #[test]
    fn substreams_replay_and_differ() {
        let a: Vec<u64> = (0..4).map(|_| substream(7, 3).next_u64()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(substream(7, 3).next_u64(), substream(7, 4).next_u64());
        assert_ne!(substream(7, 3).next_u64(), substream(8, 3).next_u64());
    }

    #[test]
    fn lazy_comparison_matches_leading_digit() {
        let mut rng = substream(1, 0);
        // u = 0.25 exactly in its first digit, all later digits drawn.
        let mut u = LazyUniform::with_leading(1u64 << 62);
        assert!(!u.less_than(&dyadic(1, 2), &mut rng));
        assert!(u.less_than(&dyadic(3, 3), &mut rng));
        assert!(!u.less_than(&BigRational::zero(), &mut rng));
        assert!(u.less_than(&BigRational::one(), &mut rng));
    }

    #[test]
    fn lazy_comparison_needs_more_digits_for_thirds() {
        let mut rng = substream(2, 0);
        let third = BigRational::new(1.into(), 3.into());
        let lead = u64::MAX / 3; // floor(2^64 / 3)
        let mut u = LazyUniform::with_leading(lead);
        let below = u.less_than(&third, &mut rng);
        // digits of 1/3 are all 0x5555..., so the answer depends on digit 1
        let second = u.digits[1];
        assert_eq!(below, second < lead);
    }

    #[test]
    fn exact_sampling_frequencies() {
        let w = vec![
            BigRational::new(1.into(), 6.into()),
            BigRational::new(2.into(), 3.into()),
            BigRational::new(1.into(), 6.into()),
        ];
        let mut counts = [0usize; 3];
        let trials = 60_000;
        for t in 0..trials {
            let mut rng = substream(11, t);
            let mut u = LazyUniform::with_leading(rng.random());
            counts[sample_exact(&w, &mut u, &mut rng)] += 1;
        }
        let f = counts[1] as f64 / trials as f64;
        assert!((f - 2.0 / 3.0).abs() < 0.01, "{counts:?}");
    }
}
