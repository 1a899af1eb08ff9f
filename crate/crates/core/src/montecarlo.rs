//! Seeded Monte Carlo estimates for tables too large to enumerate.
//!
//! Randomness comes from ChaCha8, a counter-based stream cipher RNG. Trials
//! are cut into fixed chunks and chunk `c` draws from stream `c` of the
//! generator keyed by the seed, so an estimate depends only on
//! `(seed, trials)` and never on the thread count. Per-chunk sums are
//! integers, which keeps the merge exact.

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_chunks, Execution};
use crate::strategy::{self, StrategyId};
use crate::table::{evaluate_seating, PreferenceOrder, Sign};

pub const RNG_NAME: &str = "chacha8";
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    pub rng: String,
}

impl Estimate {
    /// Distance from `target` in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target).abs() / self.std_error
    }
}

/// The generator for chunk `chunk` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

pub fn random_order(rng: &mut impl RngCore, n: usize) -> PreferenceOrder {
    let mut signs = Vec::with_capacity(n);
    while signs.len() < n {
        let word = rng.next_u64();
        let take = (n - signs.len()).min(64);
        signs.extend((0..take).map(|j| if word >> j & 1 == 1 { Sign::Right } else { Sign::Left }));
    }
    PreferenceOrder::new(signs).expect("n ≥ 1")
}

#[derive(Default)]
struct Moments {
    sum: u64,
    sum_sq: u128,
}

fn estimate<F>(trials: u64, seed: u64, exec: Execution, sample: F) -> Result<(f64, f64)>
where
    F: Fn(&mut ChaCha8Rng) -> u64 + Sync + Send,
{
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let chunks = trials.div_ceil(CHUNK);
    let parts = map_chunks(chunks as usize, exec, |c| {
        let mut rng = chunk_rng(seed, c as u64);
        let len = CHUNK.min(trials - c as u64 * CHUNK);
        let mut m = Moments::default();
        for _ in 0..len {
            let x = sample(&mut rng);
            m.sum += x;
            m.sum_sq += u128::from(x) * u128::from(x);
        }
        m
    });
    let (sum, sum_sq) = parts
        .into_iter()
        .fold((0u64, 0u128), |(s, q), m| (s + m.sum, q + m.sum_sq));
    let t = trials as f64;
    let mean = sum as f64 / t;
    let var = if trials > 1 {
        ((sum_sq as f64 - sum as f64 * mean) / (t - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok((mean, (var / t).sqrt()))
}

/// Mean napkinless count of `strategy` over `trials` uniform preference
/// orders.
pub fn mc_strategy(strategy: StrategyId, n: usize, trials: u64, seed: u64, exec: Execution) -> Result<Estimate> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let (mean, std_error) = estimate(trials, seed, exec, |rng| {
        strategy::napkinless(strategy, &random_order(rng, n)) as u64
    })?;
    Ok(Estimate { mean, std_error, trials, seed, rng: RNG_NAME.into() })
}

/// Mean napkinless *proportion* when the seating order is a uniform
/// permutation with diner 1 in seat 1 and preferences are uniform.
pub fn mc_random_seating(n: usize, trials: u64, seed: u64, exec: Execution) -> Result<Estimate> {
    if n < 2 {
        return Err(Error::InvalidArgument("random seating needs n ≥ 2".into()));
    }
    let (mean, std_error) = estimate(trials, seed, exec, |rng| {
        let mut w: Vec<usize> = (1..=n).collect();
        w[1..].shuffle(rng);
        let sigma = random_order(rng, n);
        evaluate_seating(&w, &sigma).expect("valid arrangement").napkinless_count() as u64
    })?;
    let scale = n as f64;
    Ok(Estimate {
        mean: mean / scale,
        std_error: std_error / scale,
        trials,
        seed,
        rng: RNG_NAME.into(),
    })
}
