//! The typicality ratio `L_n / log2 n` and series of it along a stream.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bitstream::BitStream;
use crate::error::{Error, Result};
use crate::hp::{log2_biguint, Real};
use crate::par::Exec;

use super::runs::max_runs_at;

/// `l / log2 n` at working precision. Requires `n >= 2`.
pub fn typicality_ratio(l: &BigUint, n: &BigUint) -> Result<Real> {
    if *n < BigUint::from(2u32) {
        return Err(Error::contract(format!(
            "typicality ratio needs n >= 2, got {n}"
        )));
    }
    Ok(Real::from_biguint(l) / log2_biguint(n))
}

#[derive(Clone, Debug)]
pub struct TypicalityRow {
    pub position: BigUint,
    pub l: BigUint,
    pub log2n: Real,
    pub ratio: Real,
    /// Whether `l` came from checkpoint metadata rather than a scan.
    pub from_metadata: bool,
}

impl TypicalityRow {
    fn new(position: BigUint, l: BigUint, from_metadata: bool) -> Result<Self> {
        let ratio = typicality_ratio(&l, &position)?;
        Ok(TypicalityRow {
            log2n: log2_biguint(&position),
            position,
            l,
            ratio,
            from_metadata,
        })
    }
}

/// One row per position. Positions up to `cap` are scanned; larger ones must
/// coincide with a checkpoint of the stream.
pub fn typicality_series(
    stream: &BitStream,
    positions: &[BigUint],
    cap: u64,
    exec: Exec,
) -> Result<Vec<TypicalityRow>> {
    if positions.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::contract("positions must be ascending"));
    }
    let streamed: Vec<u64> = positions
        .iter()
        .filter_map(|p| p.to_u64().filter(|&v| v <= cap))
        .collect();
    let scanned = max_runs_at(stream, &streamed, exec)?;
    let mut rows = Vec::with_capacity(positions.len());
    for (k, p) in positions.iter().enumerate() {
        if k < scanned.len() {
            rows.push(TypicalityRow::new(p.clone(), scanned[k].into(), false)?);
            continue;
        }
        let cp = stream.checkpoint_at(p).ok_or_else(|| Error::Resource {
            what: format!(
                "scan of {} without checkpoint metadata at this position",
                stream.kind()
            ),
            requested: p.to_string(),
            cap,
        })?;
        rows.push(TypicalityRow::new(cp.position, cp.exact_l, true)?);
    }
    Ok(rows)
}

/// Tail statistics of a sampled series. The tail is the part after the
/// burn-in fraction; min and max over it stand in for liminf and limsup.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailEstimate {
    pub samples: usize,
    pub min: f64,
    pub max: f64,
}

impl TailEstimate {
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

pub const DEFAULT_BURN_IN: f64 = 0.5;

/// Min/max over the samples after `burn_in` (a fraction in `[0, 1)`).
pub fn tail_estimate(values: &[f64], burn_in: f64) -> Option<TailEstimate> {
    let skip = ((values.len() as f64) * burn_in).floor() as usize;
    let tail = &values[skip.min(values.len())..];
    if tail.is_empty() {
        return None;
    }
    Some(TailEstimate {
        samples: tail.len(),
        min: tail.iter().copied().fold(f64::INFINITY, f64::min),
        max: tail.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Tail estimates of the last two quarters of `values`, earlier quarter first.
pub fn last_quartiles(values: &[f64]) -> Option<(TailEstimate, TailEstimate)> {
    let len = values.len();
    if len < 4 {
        return None;
    }
    let q3 = &values[len / 2..(3 * len) / 4];
    let q4 = &values[(3 * len) / 4..];
    Some((tail_estimate(q3, 0.0)?, tail_estimate(q4, 0.0)?))
}
