//! Desk-scale experiments with explicit pass/fail criteria.

pub mod experiments;
pub mod montecarlo;
pub mod report;

use crate::error::{Error, Result};
use crate::par::Exec;

pub use experiments::{
    default_reduction_cases, verify_champernowne, verify_erdos_renyi, verify_omega,
    verify_omega_prime, verify_phi, verify_reduction_f, verify_y, verify_z,
};
pub use montecarlo::{monte_carlo_erdos_renyi, monte_carlo_with, BitSourceKind, MonteCarloSummary};
pub use report::{CheckpointReport, Claim, Verdict};

pub const DEFAULT_CAP: u64 = 100_000_000;
pub const DEFAULT_FREQ_CAP: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    /// Most digits any single scan may stream.
    pub cap: u64,
    /// Most digits fed to frequency tables.
    pub freq_cap: u64,
    pub seed: u64,
    pub exec: Exec,
    /// Blocks of `f(d)` examined per descriptor.
    pub reduction_blocks: u64,
    /// Prefix length for the `phi` quadrant table.
    pub phi_len: u64,
    pub mc_trials: u64,
    pub mc_n: u64,
    /// Exponent used when the `z` experiment runs on its own.
    pub z_exponent: u32,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            cap: DEFAULT_CAP,
            freq_cap: DEFAULT_FREQ_CAP,
            seed: DEFAULT_SEED,
            exec: Exec::default(),
            reduction_blocks: 10_000,
            phi_len: 1 << 20,
            mc_trials: 500,
            mc_n: 1 << 20,
            z_exponent: 2,
        }
    }
}

/// Experiment names accepted by [`run_experiment`].
pub const EXPERIMENTS: &[&str] = &[
    "champernowne",
    "y",
    "z",
    "omega",
    "omega-prime",
    "reduction-f",
    "phi",
    "erdos-renyi",
    "all",
];

/// Runs one named experiment, or all of them for `"all"`.
pub fn run_experiment(name: &str, cfg: &HarnessConfig) -> Result<Vec<CheckpointReport>> {
    let one = |r: Result<CheckpointReport>| r.map(|x| vec![x]);
    match name {
        "champernowne" => one(verify_champernowne(cfg)),
        "y" => one(verify_y(cfg)),
        "z" => one(verify_z(cfg.z_exponent, cfg)),
        "omega" => one(verify_omega(cfg)),
        "omega-prime" => one(verify_omega_prime(cfg)),
        "reduction-f" => one(verify_reduction_f(&default_reduction_cases(), cfg)),
        "phi" => one(verify_phi(cfg)),
        "erdos-renyi" => one(verify_erdos_renyi(cfg)),
        "all" => verify_all(cfg),
        other => Err(Error::contract(format!(
            "unknown experiment {other:?}; expected one of {}",
            EXPERIMENTS.join(", ")
        ))),
    }
}

/// Every experiment (with `z` for `a = 2` and `a = 3`), run concurrently.
pub fn verify_all(cfg: &HarnessConfig) -> Result<Vec<CheckpointReport>> {
    let jobs: Vec<u8> = (0..9).collect();
    cfg.exec
        .map(jobs, |j| match j {
            0 => verify_champernowne(cfg),
            1 => verify_y(cfg),
            2 => verify_z(2, cfg),
            3 => verify_z(3, cfg),
            4 => verify_omega(cfg),
            5 => verify_omega_prime(cfg),
            6 => verify_reduction_f(&default_reduction_cases(), cfg),
            7 => verify_phi(cfg),
            _ => verify_erdos_renyi(cfg),
        })
        .into_iter()
        .collect()
}
