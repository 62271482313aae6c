//! The reduction maps as positional streams.

use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::analysis::{IndexSet, RunSummary};
use crate::bitstream::{Bit, BitStream, Checkpoint, DigitSource};
use crate::constructions::omega_prime;
use crate::par::Exec;
use crate::reductions::taylor::{big_t, floor_nonneg};
use crate::reductions::{NatSeqDescriptor, Sequence};

/// `n (n + 1) / 2`.
pub fn triangular(n: u64) -> BigUint {
    BigUint::from(n) * (n + 1) / 2u32
}

/// Block `n` holding 1-based `index`: the smallest `n` with `n(n+1)/2 >= index`.
pub fn triangular_block(index: &BigUint) -> BigUint {
    let mut n = ((index * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    while &n * (&n + 1u32) / 2u32 < *index {
        n += 1u32;
    }
    n
}

/// Streams one block of ones for every `n`, each block `n` long.
pub struct ReductionF<S> {
    seq: Arc<S>,
    /// `min(n, floor T(n))` for `n = 1, 2, ...`, filled on demand.
    ones: RwLock<Vec<u64>>,
    /// Run summary of blocks `1..=n`.
    summaries: RwLock<Vec<RunSummary>>,
}

const ONES_BATCH: usize = 256;

impl<S: Sequence + 'static> ReductionF<S> {
    pub fn new(seq: S) -> Self {
        ReductionF {
            seq: Arc::new(seq),
            ones: RwLock::new(Vec::new()),
            summaries: RwLock::new(Vec::new()),
        }
    }

    fn compute_ones(&self, n: u64) -> u64 {
        floor_nonneg(&big_t(self.seq.as_ref(), n, &triangular(n))).min(n)
    }

    /// Ones at the start of block `n`.
    pub fn ones_in_block(&self, n: u64) -> u64 {
        if let Some(&v) = self.ones.read().unwrap().get(n as usize - 1) {
            return v;
        }
        self.compute_ones(n)
    }

    /// Fills the caches through block `n`, evaluating `T` in parallel batches.
    pub fn extend_to(&self, n: u64, exec: Exec) {
        let mut ones = self.ones.write().unwrap();
        while (ones.len() as u64) < n {
            let from = ones.len() as u64 + 1;
            let to = n.min(from + ONES_BATCH as u64 * 16 - 1);
            let batch = exec.map((from..=to).collect(), |k| self.compute_ones(k));
            ones.extend(batch);
        }
        let mut sums = self.summaries.write().unwrap();
        while (sums.len() as u64) < n {
            let k = sums.len() as u64 + 1;
            let c = ones[k as usize - 1];
            let block = RunSummary::ones(c).then(RunSummary::zeros(k - c));
            let prev = sums.last().copied().unwrap_or(RunSummary::EMPTY);
            sums.push(prev.then(block));
        }
    }

    fn checkpoint_for(&self, n: u64) -> Checkpoint {
        let cached = self.summaries.read().unwrap().get(n as usize - 1).copied();
        let summary = match cached {
            Some(s) => s,
            None => {
                self.extend_to(n, Exec::default());
                self.summaries.read().unwrap()[n as usize - 1]
            }
        };
        Checkpoint {
            n,
            position: triangular(n),
            exact_l: summary.max.into(),
        }
    }
}

impl<S: Sequence + 'static> DigitSource for ReductionF<S> {
    fn label(&self) -> String {
        format!("f[{}]", self.seq)
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        let n = triangular_block(index);
        let off = index - triangular(n.to_u64().unwrap_or(u64::MAX) - 1) - 1u32;
        let n = n.to_u64().unwrap_or(u64::MAX);
        Bit::from_bool(off < BigUint::from(self.ones_in_block(n)))
    }

    fn fill(&self, start: u64, out: &mut [Bit]) {
        if out.is_empty() {
            return;
        }
        let mut n = triangular_block(&start.into()).to_u64().unwrap();
        let mut off = start - (n * (n - 1) / 2) - 1;
        let mut ones = self.ones_in_block(n);
        for slot in out.iter_mut() {
            *slot = Bit::from_bool(off < ones);
            off += 1;
            if off == n {
                n += 1;
                off = 0;
                ones = self.ones_in_block(n);
            }
        }
    }

    fn checkpoint(&self, n: u64) -> Option<Checkpoint> {
        (n >= 1).then(|| self.checkpoint_for(n))
    }

    fn has_checkpoints(&self) -> bool {
        true
    }

    fn checkpoint_at(&self, position: &BigUint) -> Option<Checkpoint> {
        let n = triangular_block(position).to_u64()?;
        (triangular(n) == *position).then(|| self.checkpoint_for(n))
    }
}

/// The stream `f(d)`: block `n` is `1^k 0^(n-k)` with `k = min(n, floor T(n))`
/// and `T` evaluated at `B_n = n(n+1)/2`.
pub fn reduction_f<S: Sequence + 'static>(d: S) -> BitStream {
    BitStream::new(ReductionF::new(d))
}

/// `m` in the dyadic block `[2^(n-1), 2^n)` is a member iff `M(n)` divides
/// `m - 2^(n-1)`.
pub struct ZeroDensitySet<S> {
    seq: Arc<S>,
}

impl<S: Sequence> ZeroDensitySet<S> {
    pub fn new(seq: S) -> Self {
        ZeroDensitySet { seq: Arc::new(seq) }
    }

    fn step(&self, n: u64) -> u64 {
        self.seq.term(n)
    }

    /// Members of `[lo, hi]` lying in block `n`, `lo..=hi` inside the block.
    fn count_in_block(&self, n: u64, lo: u64, hi: u64) -> u64 {
        let base = 1u64 << (n - 1);
        let q = self.step(n);
        let (a, b) = (lo - base, hi - base);
        b / q - a.div_ceil(q) + 1
    }
}

impl<S: Sequence> IndexSet for ZeroDensitySet<S> {
    fn describe(&self) -> String {
        format!("g[{}]", self.seq)
    }

    fn contains(&self, m: &BigUint) -> bool {
        if m.is_zero() {
            return false;
        }
        let n = m.bits();
        let off = m - (BigUint::one() << (n - 1));
        (off % self.step(n)).is_zero()
    }

    fn contains_u64(&self, m: u64) -> bool {
        if m == 0 {
            return false;
        }
        let n = 64 - m.leading_zeros() as u64;
        (m - (1u64 << (n - 1))) % self.step(n) == 0
    }

    fn count_between(&self, lo: u64, hi: u64) -> u64 {
        let lo = lo.max(1);
        if lo > hi {
            return 0;
        }
        let mut total = 0;
        let mut s = lo;
        loop {
            let n = 64 - s.leading_zeros() as u64;
            let block_end = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let e = hi.min(block_end);
            total += self.count_in_block(n, s, e);
            if e == hi {
                return total;
            }
            s = e + 1;
        }
    }
}

pub fn zero_density_g<S: Sequence>(d: S) -> ZeroDensitySet<S> {
    ZeroDensitySet::new(d)
}

/// `w` with every digit indexed by `g(d)` set to zero.
pub struct ZeroOnSet<S> {
    set: ZeroDensitySet<S>,
    base: BitStream,
}

impl<S: Sequence> fmt::Debug for ZeroOnSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl<S: Sequence> DigitSource for ZeroOnSet<S> {
    fn label(&self) -> String {
        format!("g'[{}]({})", self.set.seq, self.base.kind())
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        if self.set.contains(index) {
            Bit::Zero
        } else {
            self.base.digit_at(index)
        }
    }

    fn digit_at_u64(&self, index: u64) -> Bit {
        if self.set.contains_u64(index) {
            Bit::Zero
        } else {
            self.base.digit_at_u64(index)
        }
    }

    fn fill(&self, start: u64, out: &mut [Bit]) {
        if out.is_empty() {
            return;
        }
        self.base.fill(start, out);
        let end = start + out.len() as u64 - 1;
        let mut s = start;
        while s <= end {
            let n = 64 - s.leading_zeros() as u64;
            let base = 1u64 << (n - 1);
            let block_end = (1u64 << n).wrapping_sub(1).min(end);
            let q = self.set.step(n);
            let first = base + (s - base).div_ceil(q) * q;
            let mut m = first;
            while m <= block_end {
                out[(m - start) as usize] = Bit::Zero;
                m += q;
            }
            if block_end == end {
                break;
            }
            s = block_end + 1;
        }
    }
}

pub fn action_g_prime<S: Sequence + 'static>(d: S, w: BitStream) -> BitStream {
    BitStream::new(ZeroOnSet {
        set: ZeroDensitySet::new(d),
        base: w,
    })
}

/// First segment index `f'` rewrites.
pub const F_PRIME_FIRST: u64 = 5;

/// For every `n >= 5`, the last `l_n + 2` digits of `(2^(n-1), 2^n]` become
/// `0 1^(l_n) 0` with `l_n = min(floor T(n), 2n)` and `B_n = 2^n`.
pub struct BlockOverwrite<S> {
    seq: Arc<S>,
    base: BitStream,
    lens: [OnceLock<u64>; 64],
}

impl<S: Sequence> BlockOverwrite<S> {
    pub fn new(seq: S, base: BitStream) -> Self {
        BlockOverwrite {
            seq: Arc::new(seq),
            base,
            lens: std::array::from_fn(|_| OnceLock::new()),
        }
    }

    fn compute_len(&self, n: u64) -> u64 {
        floor_nonneg(&big_t(self.seq.as_ref(), n, &(BigUint::one() << n))).min(2 * n)
    }

    /// `l_n`.
    pub fn run_len(&self, n: u64) -> u64 {
        match self.lens.get(n as usize) {
            Some(cell) => *cell.get_or_init(|| self.compute_len(n)),
            None => self.compute_len(n),
        }
    }

    /// Overwritten digit at 1-based `index`, if any. `n` is the segment.
    fn overwrite(&self, n: u64, from_end: &BigUint) -> Option<Bit> {
        // from_end = 2^n - index, so 0 is the segment's last digit.
        if n < F_PRIME_FIRST {
            return None;
        }
        let l = self.run_len(n);
        let d = from_end.to_u64()?;
        if d == 0 || d == l + 1 {
            Some(Bit::Zero)
        } else if d <= l {
            Some(Bit::One)
        } else {
            None
        }
    }
}

impl<S: Sequence> DigitSource for BlockOverwrite<S> {
    fn label(&self) -> String {
        format!("f'[{}]({})", self.seq, self.base.kind())
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        // Segment n holds (2^(n-1), 2^n].
        let n = (index - 1u32).bits();
        let from_end = (BigUint::one() << n) - index;
        self.overwrite(n, &from_end)
            .unwrap_or_else(|| self.base.digit_at(index))
    }

    fn fill(&self, start: u64, out: &mut [Bit]) {
        if out.is_empty() {
            return;
        }
        self.base.fill(start, out);
        let end = start + out.len() as u64 - 1;
        let first_seg = (start - 1).max(1).ilog2() as u64 + 1;
        let mut n = first_seg.max(F_PRIME_FIRST);
        while n < 64 {
            let seg_end = 1u64 << n;
            let l = self.run_len(n);
            let from = seg_end - l - 1;
            if from > end {
                break;
            }
            for pos in from.max(start)..=seg_end.min(end) {
                let d = seg_end - pos;
                out[(pos - start) as usize] = Bit::from_bool(d != 0 && d <= l);
            }
            n += 1;
        }
    }
}

pub fn action_f_prime<S: Sequence + 'static>(d: S, w: BitStream) -> BitStream {
    BitStream::new(BlockOverwrite::new(d, w))
}

/// At most this many of the first `2^n` digits differ between `w` and
/// `action_f_prime(d, w)`.
pub fn f_prime_change_bound(n: u64) -> u64 {
    (F_PRIME_FIRST..=n).map(|i| 2 * i + 2).sum()
}

/// `f'(odd(d)) ∘ g'(even(d))` applied to ω′.
pub fn phi(d: &NatSeqDescriptor) -> BitStream {
    action_f_prime(d.odd(), action_g_prime(d.even(), omega_prime()))
}

/// Length of the prefix on which `phi` images of two descriptors agreeing in
/// their first `k` terms must coincide.
pub fn phi_agreement_prefix(k: u64) -> BigUint {
    let odd_known = k.div_ceil(2);
    let even_known = k / 2;
    // g' decides m in [2^(j-1), 2^j) from even term j; f' rewrites
    // (2^(j-1), 2^j] from odd term j.
    let g_ok = (BigUint::one() << even_known) - 1u32;
    let f_ok = BigUint::one() << odd_known.max(F_PRIME_FIRST - 1);
    g_ok.min(f_ok)
}
