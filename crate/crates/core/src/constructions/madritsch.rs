//! The sequence `w_1^{l_1} w_2^{l_2} ...` where `w_i` lists every `i`-digit
//! block in numeric order, each repeated `e_i` times, and `l_i = i^(2^i)`.
//!
//! The modified sequence replaces the final section of every copy of `w_i`
//! (the block `1^i` repeated `e_i` times) by zeros.

use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::analysis::RunSummary;
use crate::bitstream::{Bit, Checkpoint, DigitSource};
use crate::hp::Real;

/// Highest level the structure will build. `B_24` has over 10^7 decimal
/// digits, so no reachable index lies beyond it.
pub const MAX_LEVEL: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub i: u32,
    /// Repetitions of each block inside `w_i`.
    pub e: u64,
    /// Copies of `w_i`.
    pub l: BigUint,
    /// `|w_i| = 2^i * i * e_i`.
    pub w_len: u64,
    /// `B_{i-1}`: digits before the level.
    pub before: BigUint,
    /// `B_i`: index of the level's last digit.
    pub end: BigUint,
}

impl Level {
    fn section_len(&self) -> u64 {
        self.i as u64 * self.e
    }
}

/// `ceil(i 2^i ln i)`, clamped to at least one.
pub fn inner_exponent(i: u32) -> u64 {
    let x = Real::from_u64((i as u64) << i) * Real::from_u64(i as u64).ln();
    let e = x.ceil().to_i128().expect("e_i fits") as u64;
    e.max(1)
}

/// Lazily extended table of levels, shared by the ω and ω′ streams.
#[derive(Debug, Default)]
pub struct MadritschStructure {
    levels: RwLock<Vec<Level>>,
}

impl MadritschStructure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn level(&self, i: u32) -> Level {
        assert!(
            (1..=MAX_LEVEL).contains(&i),
            "level {i} outside 1..={MAX_LEVEL}"
        );
        if let Some(l) = self.levels.read().unwrap().get(i as usize - 1) {
            return l.clone();
        }
        let mut levels = self.levels.write().unwrap();
        while levels.len() < i as usize {
            let i = levels.len() as u32 + 1;
            let e = inner_exponent(i);
            let w_len = (1u64 << i)
                .checked_mul(i as u64 * e)
                .expect("|w_i| fits in u64 below MAX_LEVEL");
            let l = BigUint::from(i).pow(1u32 << i);
            let before = levels.last().map(|p| p.end.clone()).unwrap_or_default();
            let end = &before + &l * w_len;
            levels.push(Level {
                i,
                e,
                l,
                w_len,
                before,
                end,
            });
        }
        levels[i as usize - 1].clone()
    }

    pub fn e(&self, i: u32) -> u64 {
        self.level(i).e
    }

    pub fn l(&self, i: u32) -> BigUint {
        self.level(i).l
    }

    pub fn w_len(&self, i: u32) -> u64 {
        self.level(i).w_len
    }

    /// `B_n = sum_{i <= n} l_i |w_i|`, with `B_0 = 0`.
    pub fn boundary(&self, n: u32) -> BigUint {
        if n == 0 {
            BigUint::zero()
        } else {
            self.level(n).end
        }
    }

    /// Level holding 1-based `index`.
    pub fn level_of(&self, index: &BigUint) -> Level {
        let mut i = 1;
        loop {
            let lv = self.level(i);
            if *index <= lv.end {
                return lv;
            }
            i += 1;
        }
    }

    fn level_of_u64(&self, index: u64) -> Level {
        {
            let levels = self.levels.read().unwrap();
            let hit = levels
                .iter()
                .find(|lv| lv.end.to_u64().map_or(true, |e| index <= e));
            if let Some(lv) = hit {
                return lv.clone();
            }
        }
        self.level_of(&BigUint::from(index))
    }

    /// Run length the construction creates at the end of every copy of `w_n`:
    /// the block `1^n` repeated `e_n` times.
    pub fn actual_run(&self, n: u32) -> u64 {
        n as u64 * self.e(n)
    }

    /// `A(n) / B(n)`: the share of the first `B_n` digits that the
    /// modification zeroes.
    pub fn modified_share(&self, n: u32) -> BigRational {
        let mut a = BigUint::zero();
        for i in 1..=n {
            let lv = self.level(i);
            a += &lv.l * lv.section_len();
        }
        BigRational::new(a.into(), self.boundary(n).into())
    }

    /// One copy of `w_i`, materialized.
    pub fn copy_digits(&self, i: u32, modified: bool) -> Vec<Bit> {
        let lv = self.level(i);
        let mut out = Vec::with_capacity(lv.w_len as usize);
        for j in 0..(1u64 << i) {
            let zeroed = modified && j == (1u64 << i) - 1;
            for _ in 0..lv.e {
                for pos in 0..i {
                    out.push(Bit::from_bool(!zeroed && (j >> (i - 1 - pos)) & 1 == 1));
                }
            }
        }
        out
    }

    /// Run summary of one copy of `w_i`, built block by block.
    pub fn copy_summary(&self, i: u32, modified: bool) -> RunSummary {
        let lv = self.level(i);
        let e = BigUint::from(lv.e);
        let mut acc = RunSummary::EMPTY;
        for j in 0..(1u64 << i) {
            let section = if modified && j == (1u64 << i) - 1 {
                RunSummary::zeros(lv.section_len())
            } else {
                block_summary(j, i).repeat(&e)
            };
            acc = acc.then(section);
        }
        acc
    }

    /// Exact `L` at `B_n`.
    pub fn max_run_at_boundary(&self, n: u32, modified: bool) -> u64 {
        (1..=n)
            .map(|i| self.copy_summary(i, modified).repeat(&self.l(i)))
            .fold(RunSummary::EMPTY, RunSummary::then)
            .max
    }

    fn bit(&self, lv: &Level, r: u64, modified: bool) -> Bit {
        let j = r / lv.section_len();
        if modified && j == (1u64 << lv.i) - 1 {
            return Bit::Zero;
        }
        let pos = (r % lv.section_len() % lv.i as u64) as u32;
        Bit::from_bool((j >> (lv.i - 1 - pos)) & 1 == 1)
    }
}

/// Summary of the `i`-digit notation of `j`.
fn block_summary(j: u64, i: u32) -> RunSummary {
    let len = i as u64;
    let width_mask = if i == 64 { u64::MAX } else { (1u64 << i) - 1 };
    if j == width_mask {
        return RunSummary::ones(len);
    }
    let shifted = j << (64 - i);
    let leading = shifted.leading_ones() as u64;
    let trailing = j.trailing_ones() as u64;
    let mut max = 0u64;
    let mut cur = 0u64;
    for pos in (0..i).rev() {
        if (j >> pos) & 1 == 1 {
            cur += 1;
            max = max.max(cur);
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

/// Digit source for ω (`modified = false`) or ω′.
#[derive(Debug, Clone)]
pub struct MadritschSequence {
    structure: Arc<MadritschStructure>,
    modified: bool,
}

impl MadritschSequence {
    pub fn new(structure: Arc<MadritschStructure>, modified: bool) -> Self {
        MadritschSequence {
            structure,
            modified,
        }
    }

    pub fn structure(&self) -> &Arc<MadritschStructure> {
        &self.structure
    }

    pub fn is_modified(&self) -> bool {
        self.modified
    }

    fn checkpoint_for(&self, n: u32) -> Checkpoint {
        Checkpoint {
            n: n as u64,
            position: self.structure.boundary(n),
            exact_l: self.structure.max_run_at_boundary(n, self.modified).into(),
        }
    }
}

impl DigitSource for MadritschSequence {
    fn label(&self) -> String {
        if self.modified {
            "omega-prime"
        } else {
            "omega"
        }
        .into()
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        let lv = self.structure.level_of(index);
        let r = ((index - &lv.before - 1u32) % lv.w_len).to_u64().unwrap();
        self.structure.bit(&lv, r, self.modified)
    }

    fn digit_at_u64(&self, index: u64) -> Bit {
        let lv = self.structure.level_of_u64(index);
        let before = lv.before.to_u64().unwrap();
        self.structure
            .bit(&lv, (index - before - 1) % lv.w_len, self.modified)
    }

    fn fill(&self, start: u64, out: &mut [Bit]) {
        let mut next = start;
        let mut done = 0usize;
        while done < out.len() {
            let lv = self.structure.level_of_u64(next);
            let before = lv.before.to_u64().unwrap();
            let left_in_level = lv.end.to_u64().map_or(u64::MAX, |e| e - next + 1);
            let take = (out.len() - done).min(left_in_level.min(usize::MAX as u64) as usize);
            let r = (next - before - 1) % lv.w_len;
            fill_level(&lv, r, self.modified, &mut out[done..done + take]);
            done += take;
            next += take as u64;
        }
    }

    fn checkpoint(&self, n: u64) -> Option<Checkpoint> {
        (1..=MAX_LEVEL as u64)
            .contains(&n)
            .then(|| self.checkpoint_for(n as u32))
    }

    fn has_checkpoints(&self) -> bool {
        true
    }

    fn checkpoint_at(&self, position: &BigUint) -> Option<Checkpoint> {
        let lv = self.structure.level_of(position);
        (lv.end == *position).then(|| self.checkpoint_for(lv.i))
    }
}

/// Writes digits of level `lv` starting at in-copy offset `r`.
fn fill_level(lv: &Level, r: u64, modified: bool, out: &mut [Bit]) {
    let i = lv.i;
    let last = (1u64 << i) - 1;
    let mut j = r / lv.section_len();
    let within = r % lv.section_len();
    let mut rep = within / i as u64;
    let mut pos = (within % i as u64) as u32;
    for slot in out.iter_mut() {
        *slot = Bit::from_bool(!(modified && j == last) && (j >> (i - 1 - pos)) & 1 == 1);
        pos += 1;
        if pos == i {
            pos = 0;
            rep += 1;
            if rep == lv.e {
                rep = 0;
                j = if j == last { 0 } else { j + 1 };
            }
        }
    }
}
