//! Generators and analyzers for binary expansions whose longest run of ones
//! grows like `log2 n`, together with the reductions and numerical
//! experiments built on them.

pub mod analysis;
pub mod bitstream;
pub mod constructions;
pub mod error;
pub mod harness;
pub mod hp;
pub mod par;
pub mod reductions;
mod util;

pub use bitstream::{Bit, BitStream, Block, Checkpoint, DigitSource, Prefix};
pub use error::{Error, Result};
pub use par::Exec;
