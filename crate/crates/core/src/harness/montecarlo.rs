//! Longest runs in seeded pseudorandom bit streams.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::RunSummary;
use crate::error::{Error, Result};
use crate::par::Exec;

pub const MIN_TRIALS: u64 = 100;
pub const MIN_LENGTH: u64 = 1 << 16;

/// Where trial bits come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitSourceKind {
    /// ChaCha8 seeded with `seed`, one stream per trial.
    ChaCha,
    /// Every bit is one. Used to check that the acceptance band rejects it.
    AllOnes,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub trials: u64,
    pub n: u64,
    pub seed: u64,
    /// `L_n` of each trial, in trial order.
    pub runs: Vec<u64>,
    /// Mean of `L_n / log2 n`.
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

/// Run summary of 64 bits read most significant first.
fn word_summary(w: u64, len: u32) -> RunSummary {
    let w = if len == 64 { w } else { w & !(u64::MAX >> len) };
    let len64 = len as u64;
    let leading = (w.leading_ones() as u64).min(len64);
    if leading == len64 {
        return RunSummary::ones(len64);
    }
    let trailing = ((w >> (64 - len)).trailing_ones()) as u64;
    let mut x = w;
    let mut max = 0u64;
    while x != 0 {
        x &= x << 1;
        max += 1;
    }
    RunSummary {
        len: len64,
        leading,
        trailing,
        max,
    }
}

/// `L_n` of one trial.
pub fn trial_run(kind: BitSourceKind, seed: u64, trial: u64, n: u64) -> u64 {
    match kind {
        BitSourceKind::AllOnes => n,
        BitSourceKind::ChaCha => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let mut acc = RunSummary::EMPTY;
            let mut left = n;
            while left > 0 {
                let take = left.min(64) as u32;
                acc = acc.then(word_summary(rng.next_u64(), take));
                left -= take as u64;
            }
            acc.max
        }
    }
}

pub fn monte_carlo_with(
    kind: BitSourceKind,
    trials: u64,
    n: u64,
    seed: u64,
    exec: Exec,
) -> Result<MonteCarloSummary> {
    if trials < MIN_TRIALS {
        return Err(Error::contract(format!(
            "need at least {MIN_TRIALS} trials, got {trials}"
        )));
    }
    if n < MIN_LENGTH {
        return Err(Error::contract(format!("need n >= {MIN_LENGTH}, got {n}")));
    }
    let runs = exec.map((0..trials).collect(), |t| trial_run(kind, seed, t, n));
    let log2n = (n as f64).log2();
    let ratios: Vec<f64> = runs.iter().map(|&l| l as f64 / log2n).collect();
    let mean = ratios.iter().sum::<f64>() / trials as f64;
    let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    Ok(MonteCarloSummary {
        trials,
        n,
        seed,
        runs,
        mean,
        std_dev: var.sqrt(),
        min: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        max: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Mean and spread of `L_n / log2 n` over `trials` uniform random streams.
pub fn monte_carlo_erdos_renyi(
    trials: u64,
    n: u64,
    seed: u64,
    exec: Exec,
) -> Result<MonteCarloSummary> {
    monte_carlo_with(BitSourceKind::ChaCha, trials, n, seed, exec)
}
