//! Binary symmetric channel and per-trial random streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Independent stream for one trial, keyed by `(master_seed, trial)`.
///
/// Streams depend only on the key, so trials can run in any order or on any
/// thread without changing their samples.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=0.5).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Each of the `n` bits is set independently with probability `p`.
pub fn sample_bsc<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<BitVector> {
    check_probability(p)?;
    let mut support = Vec::new();
    for i in 0..n {
        if rng.random::<f64>() < p {
            support.push(i);
        }
    }
    Ok(BitVector::from_sorted_unchecked(n, support))
}
