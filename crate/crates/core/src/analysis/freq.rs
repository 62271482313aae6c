//! Overlapping block counts `N(x, w, n)` for every block of length `1..=m`,
//! and the normality discrepancy derived from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bitstream::{Bit, BitStream, Block};
use crate::error::{Error, Result};
use crate::par::{chunk_ranges, Exec};

pub const MAX_BLOCK_LEN: usize = 24;

/// Sliding-window block counter. Block values are read most significant
/// digit first, so the block `"110"` is counted under value `6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreqTable {
    m: usize,
    n: u64,
    window: u32,
    filled: usize,
    counts: Vec<Vec<u64>>,
}

impl FreqTable {
    pub fn new(m: usize) -> Result<Self> {
        if !(1..=MAX_BLOCK_LEN).contains(&m) {
            return Err(Error::contract(format!(
                "block length m must be in 1..={MAX_BLOCK_LEN}, got {m}"
            )));
        }
        Ok(FreqTable {
            m,
            n: 0,
            window: 0,
            filled: 0,
            counts: (1..=m).map(|l| vec![0u64; 1 << l]).collect(),
        })
    }

    /// A table that counts only windows ending after `history`, which holds the
    /// digits immediately preceding the first digit to be fed.
    fn resume(m: usize, history: &[Bit]) -> Self {
        let mut t = FreqTable::new(m).expect("validated m");
        for &b in history {
            t.push_window(b);
        }
        t
    }

    #[inline]
    fn push_window(&mut self, b: Bit) {
        self.window = ((self.window << 1) | b.as_u8() as u32) & mask(self.m);
        if self.filled < self.m {
            self.filled += 1;
        }
    }

    #[inline]
    pub fn feed(&mut self, b: Bit) {
        self.push_window(b);
        self.n += 1;
        for l in 1..=self.filled {
            self.counts[l - 1][(self.window & mask(l)) as usize] += 1;
        }
    }

    /// Value-style form of [`FreqTable::feed`].
    pub fn freq_feed(mut self, b: Bit) -> Self {
        self.feed(b);
        self
    }

    pub fn feed_all(&mut self, bits: &[Bit]) {
        for &b in bits {
            self.feed(b);
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn position(&self) -> u64 {
        self.n
    }

    /// `N(x, block, n)`. Blocks must have length `1..=m`.
    pub fn count(&self, block: &Block) -> Result<u64> {
        let l = block.len();
        if l == 0 || l > self.m {
            return Err(Error::contract(format!(
                "block length must be in 1..={}, got {l}",
                self.m
            )));
        }
        Ok(self.counts[l - 1][block.value() as usize])
    }

    /// All counts for blocks of length `l`, indexed by block value.
    pub fn counts_of_len(&self, l: usize) -> &[u64] {
        &self.counts[l - 1]
    }

    /// Adds the counts of a table that continued where `self` stopped.
    fn absorb(&mut self, later: &FreqTable) {
        for (mine, theirs) in self.counts.iter_mut().zip(&later.counts) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                *a += b;
            }
        }
        self.n += later.n;
        self.window = later.window;
        self.filled = self.filled.max(later.filled).min(self.m);
    }
}

#[inline]
fn mask(l: usize) -> u32 {
    if l >= 32 {
        u32::MAX
    } else {
        (1u32 << l) - 1
    }
}

/// `max |N(x,w,n)/n - 2^-|w||` over all blocks with `1 <= |w| <= m`.
pub fn normality_discrepancy(ft: &FreqTable) -> Result<BigRational> {
    discrepancy_with_block(ft).map(|(d, _)| d)
}

/// Like [`normality_discrepancy`], also returning the block attaining it.
pub fn discrepancy_with_block(ft: &FreqTable) -> Result<(BigRational, Block)> {
    if ft.n < ft.m as u64 {
        return Err(Error::contract(format!(
            "discrepancy needs at least m = {} digits, have {}",
            ft.m, ft.n
        )));
    }
    // Compare |N * 2^l - n| * 2^(m - l) over the common denominator n * 2^m.
    let n = ft.n as i128;
    let mut best: (i128, usize, usize) = (-1, 1, 0);
    for l in 1..=ft.m {
        for (v, &c) in ft.counts[l - 1].iter().enumerate() {
            let dev = ((c as i128) << l).abs_diff(n) as i128;
            let scaled = dev << (ft.m - l);
            if scaled > best.0 {
                best = (scaled, l, v);
            }
        }
    }
    let value = BigRational::new(BigInt::from(best.0), BigInt::from(n) << ft.m);
    Ok((value, Block::from_value(best.2 as u64, best.1)))
}

/// `max |N_a(w) - N_b(w)| / n` over all blocks, for two tables over the same
/// number of digits.
pub fn frequency_gap(a: &FreqTable, b: &FreqTable) -> Result<BigRational> {
    if a.n != b.n || a.m != b.m {
        return Err(Error::contract(
            "frequency_gap needs tables of equal m and position",
        ));
    }
    if a.n == 0 {
        return Ok(BigRational::zero());
    }
    let worst = a
        .counts
        .iter()
        .zip(&b.counts)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.abs_diff(*q)))
        .max()
        .unwrap_or(0);
    Ok(BigRational::new(BigInt::from(worst), BigInt::from(a.n)))
}

/// Frequency tables of `stream` over the prefixes ending at each position
/// (ascending), computed chunk-parallel.
pub fn freq_tables_at(
    stream: &BitStream,
    positions: &[u64],
    m: usize,
    exec: Exec,
) -> Result<Vec<FreqTable>> {
    FreqTable::new(m)?;
    if positions.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::contract("positions must be ascending"));
    }
    let mut work = Vec::new();
    let mut prev = 0u64;
    for (k, &p) in positions.iter().enumerate() {
        for (s, e) in chunk_ranges(prev + 1, p, super::runs::SCAN_CHUNK) {
            work.push((k, s, e));
        }
        prev = prev.max(p);
    }
    let partials = exec.map(work.clone(), |(_, s, e)| {
        let hist = (m as u64 - 1).min(s - 1);
        let mut buf = vec![Bit::Zero; (e - s + 1 + hist) as usize];
        stream.fill(s - hist, &mut buf);
        let (history, body) = buf.split_at(hist as usize);
        let mut t = FreqTable::resume(m, history);
        t.feed_all(body);
        t
    });
    let mut acc = FreqTable::new(m)?;
    let mut out = Vec::with_capacity(positions.len());
    let mut next_item = 0;
    for k in 0..positions.len() {
        while next_item < work.len() && work[next_item].0 == k {
            acc.absorb(&partials[next_item]);
            next_item += 1;
        }
        out.push(acc.clone());
    }
    Ok(out)
}
