//! Seeded random inputs for the randomized checks.
//!
//! Trial `i` of a run with seed `s` draws from a ChaCha8 stream keyed by
//! [`trial_seed`]`(s, i)`, which is the `(i + 1)`-th output of a SplitMix64
//! generator started at `s`. Trials are therefore independent of one another
//! and of evaluation order, and any single trial can be replayed in isolation.
//!
//! Coefficients are `p / d` with `p` uniform in [`NUMERATOR_RANGE`] and `d`
//! uniform over [`DENOMINATORS`].

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arithfun::ArithFun;
use crate::exactnum::Rational;
use crate::series::TruncatedSeries;

pub const DEFAULT_SEED: u64 = 42;
pub const NUMERATOR_RANGE: RangeInclusive<i64> = -5..=5;
pub const DENOMINATORS: [i64; 3] = [1, 2, 3];

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed derived from the run seed.
pub fn trial_seed(seed: u64, trial: u32) -> u64 {
    splitmix64_mix(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(trial as u64 + 1)))
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, trial: u32) -> ChaCha8Rng {
    rng_for(trial_seed(seed, trial))
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let p = rng.random_range(NUMERATOR_RANGE);
    let d = DENOMINATORS[rng.random_range(0..DENOMINATORS.len())];
    Rational::new(p, d).expect("denominators are nonzero")
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_series<R: Rng + ?Sized>(rng: &mut R, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |_| random_rational(rng))
}

pub fn random_function<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> ArithFun {
    ArithFun::from_fn(bound, |_| random_rational(rng))
}

/// The series drawn by trial `trial`: `G`, then `H` when `pair` is set.
pub fn trial_series(
    seed: u64,
    trial: u32,
    order: usize,
    pair: bool,
) -> (TruncatedSeries, Option<TruncatedSeries>) {
    let mut rng = trial_rng(seed, trial);
    let g = random_series(&mut rng, order);
    let h = pair.then(|| random_series(&mut rng, order));
    (g, h)
}

/// The functions drawn by trial `trial`: `g`, then `h` when `pair` is set.
pub fn trial_functions(
    seed: u64,
    trial: u32,
    bound: u64,
    pair: bool,
) -> (ArithFun, Option<ArithFun>) {
    let mut rng = trial_rng(seed, trial);
    let g = random_function(&mut rng, bound);
    let h = pair.then(|| random_function(&mut rng, bound));
    (g, h)
}
