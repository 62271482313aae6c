//! Longest run of ones: a sequential accumulator and an associative summary
//! that lets a prefix be scanned in independent chunks.

use num_bigint::BigUint;

use crate::bitstream::{Bit, BitStream};
use crate::error::{Error, Result};
use crate::par::{chunk_ranges, Exec};

/// Streaming accumulator for `L_n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunState {
    pub position: u64,
    pub current_run: u64,
    pub max_run: u64,
}

impl RunState {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn feed(&mut self, b: Bit) {
        self.position += 1;
        if b.is_one() {
            self.current_run += 1;
            self.max_run = self.max_run.max(self.current_run);
        } else {
            self.current_run = 0;
        }
    }

    /// Value-style form of [`RunState::feed`].
    pub fn run_feed(mut self, b: Bit) -> Self {
        self.feed(b);
        self
    }

    pub fn feed_all(&mut self, bits: &[Bit]) {
        for &b in bits {
            self.feed(b);
        }
    }
}

/// Run-of-ones summary of a finite segment. Summaries of adjacent segments
/// combine associatively with [`RunSummary::then`].
///
/// `len` saturates; it only feeds other fields while the segment is all ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub len: u64,
    pub leading: u64,
    pub trailing: u64,
    pub max: u64,
}

impl RunSummary {
    pub const EMPTY: RunSummary = RunSummary {
        len: 0,
        leading: 0,
        trailing: 0,
        max: 0,
    };

    pub fn ones(len: u64) -> Self {
        RunSummary {
            len,
            leading: len,
            trailing: len,
            max: len,
        }
    }

    pub fn zeros(len: u64) -> Self {
        RunSummary { len, ..Self::EMPTY }
    }

    pub fn of_bits(bits: &[Bit]) -> Self {
        let leading = bits.iter().take_while(|b| b.is_one()).count() as u64;
        let len = bits.len() as u64;
        if leading == len {
            return Self::ones(len);
        }
        let trailing = bits.iter().rev().take_while(|b| b.is_one()).count() as u64;
        let mut cur = 0u64;
        let mut max = 0u64;
        for &b in bits {
            if b.is_one() {
                cur += 1;
                if cur > max {
                    max = cur;
                }
            } else {
                cur = 0;
            }
        }
        RunSummary {
            len,
            leading,
            trailing,
            max,
        }
    }

    pub fn is_all_ones(&self) -> bool {
        self.leading == self.len
    }

    /// Summary of `self` followed by `next`.
    pub fn then(self, next: RunSummary) -> RunSummary {
        let leading = if self.is_all_ones() {
            self.len.saturating_add(next.leading)
        } else {
            self.leading
        };
        let trailing = if next.is_all_ones() {
            next.len.saturating_add(self.trailing)
        } else {
            next.trailing
        };
        RunSummary {
            len: self.len.saturating_add(next.len),
            leading,
            trailing,
            max: self
                .max
                .max(next.max)
                .max(self.trailing.saturating_add(next.leading)),
        }
    }

    /// Summary of `times` back-to-back copies.
    pub fn repeat(self, times: &BigUint) -> RunSummary {
        let zero = BigUint::from(0u32);
        if *times == zero {
            return Self::EMPTY;
        }
        let t = u64::try_from(times).unwrap_or(u64::MAX);
        if self.is_all_ones() {
            return Self::ones(self.len.saturating_mul(t));
        }
        let max = if t >= 2 {
            self.max.max(self.trailing + self.leading)
        } else {
            self.max
        };
        RunSummary {
            len: self.len.saturating_mul(t),
            leading: self.leading,
            trailing: self.trailing,
            max,
        }
    }
}

/// Digits per parallel work item.
pub const SCAN_CHUNK: u64 = 1 << 20;

/// `L_p` of `stream` at each position in `positions` (ascending, 1-based),
/// computed in one pass over the prefix up to the last position.
pub fn max_runs_at(stream: &BitStream, positions: &[u64], exec: Exec) -> Result<Vec<u64>> {
    if positions.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::contract("positions must be ascending"));
    }
    let mut work = Vec::new();
    let mut prev = 0u64;
    for (k, &p) in positions.iter().enumerate() {
        for (s, e) in chunk_ranges(prev + 1, p, SCAN_CHUNK) {
            work.push((k, s, e));
        }
        prev = prev.max(p);
    }
    let sums = exec.map(work.clone(), |(_, s, e)| {
        let mut buf = vec![Bit::Zero; (e - s + 1) as usize];
        stream.fill(s, &mut buf);
        RunSummary::of_bits(&buf)
    });
    let mut acc = RunSummary::EMPTY;
    let mut out = vec![0u64; positions.len()];
    let mut next_item = 0;
    for (k, _) in positions.iter().enumerate() {
        while next_item < work.len() && work[next_item].0 == k {
            acc = acc.then(sums[next_item]);
            next_item += 1;
        }
        out[k] = acc.max;
    }
    Ok(out)
}

/// `L_n` of the first `n` digits.
pub fn max_run(stream: &BitStream, n: u64, exec: Exec) -> u64 {
    max_runs_at(stream, &[n], exec).expect("single position")[0]
}
