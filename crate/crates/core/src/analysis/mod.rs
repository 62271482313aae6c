//! Streaming analyzers: longest runs, typicality ratios, block frequencies,
//! index-set densities and admissible-block counting.

pub mod admissible;
pub mod density;
pub mod freq;
pub mod runs;
pub mod typicality;

pub use admissible::admissible_blocks_count;
pub use density::{density_series, DensityRow, IndexSet};
pub use freq::{
    discrepancy_with_block, freq_tables_at, frequency_gap, normality_discrepancy, FreqTable,
};
pub use runs::{max_run, max_runs_at, RunState, RunSummary};
pub use typicality::{
    tail_estimate, typicality_ratio, typicality_series, TailEstimate, TypicalityRow,
};
