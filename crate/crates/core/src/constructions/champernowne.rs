//! Streams built from the binary notations of `1, 2, 3, ...`, each notation
//! emitted `2^a` times in a row. With `a = 0` this is the binary Champernowne
//! constant; `a >= 2` gives `z`; replacing each notation by a constant block
//! gives the strictly typical `y`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bitstream::{Bit, Checkpoint, DigitSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Emit {
    /// The binary notation itself.
    Notation,
    /// `1^k` for `v = 2^k - 1`, otherwise `0^k`.
    MersenneIndicator,
}

#[derive(Clone, Debug)]
pub struct NotationConcat {
    rep_log2: u32,
    emit: Emit,
}

impl NotationConcat {
    pub(crate) fn new(rep_log2: u32, emit: Emit) -> Self {
        NotationConcat { rep_log2, emit }
    }

    /// Index of the last digit of the `k`-digit section, `2^a ((k-1) 2^k + 1)`.
    fn end_of_u128(&self, k: u32) -> u128 {
        if k == 0 {
            return 0;
        }
        (((k as u128 - 1) << k) + 1) << self.rep_log2
    }

    fn end_of(&self, k: u64) -> BigUint {
        if k == 0 {
            return BigUint::zero();
        }
        ((BigUint::from(k - 1) << k) + 1u32) << self.rep_log2
    }

    #[inline]
    fn bit_of(&self, v: u128, k: u32, pos: u32) -> Bit {
        match self.emit {
            Emit::Notation => Bit::from_bool((v >> (k - 1 - pos)) & 1 == 1),
            Emit::MersenneIndicator => Bit::from_bool(v.count_ones() == k),
        }
    }

    /// Section length `k`, copy index within the section and digit position
    /// within the notation for a 1-based index that fits in `u64`.
    fn locate_u64(&self, index: u64) -> (u32, u128, u32) {
        let i = index as u128;
        let mut k = 1u32;
        while self.end_of_u128(k) < i {
            k += 1;
        }
        let o = i - self.end_of_u128(k - 1) - 1;
        (k, o / k as u128, (o % k as u128) as u32)
    }

    pub fn checkpoint_for(&self, n: u64) -> Checkpoint {
        let run = match self.emit {
            Emit::Notation | Emit::MersenneIndicator => BigUint::from(n) << self.rep_log2,
        };
        Checkpoint {
            n,
            position: self.end_of(n),
            exact_l: run,
        }
    }
}

impl DigitSource for NotationConcat {
    fn label(&self) -> String {
        match (self.emit, self.rep_log2) {
            (Emit::Notation, 0) => "champernowne".into(),
            (Emit::Notation, a) => format!("z(a={a})"),
            (Emit::MersenneIndicator, _) => "y".into(),
        }
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        if let Some(i) = index.to_u64() {
            return self.digit_at_u64(i);
        }
        let mut k = 1u64;
        while self.end_of(k) < *index {
            k += 1;
        }
        let o = index - self.end_of(k - 1) - 1u32;
        let copy = &o / k;
        let pos = (&o % k).to_u64().expect("residue fits");
        let v = (BigUint::one() << (k - 1)) + (copy >> self.rep_log2);
        match self.emit {
            Emit::Notation => Bit::from_bool(v.bit(k - 1 - pos)),
            Emit::MersenneIndicator => Bit::from_bool(v.count_ones() == k),
        }
    }

    fn digit_at_u64(&self, index: u64) -> Bit {
        let (k, copy, pos) = self.locate_u64(index);
        let v = (1u128 << (k - 1)) + (copy >> self.rep_log2);
        self.bit_of(v, k, pos)
    }

    fn fill(&self, start: u64, out: &mut [Bit]) {
        if out.is_empty() {
            return;
        }
        let (mut k, mut copy, mut pos) = self.locate_u64(start);
        let mut copies_in_section = 1u128 << (k - 1 + self.rep_log2);
        let mut v = (1u128 << (k - 1)) + (copy >> self.rep_log2);
        for slot in out.iter_mut() {
            *slot = self.bit_of(v, k, pos);
            pos += 1;
            if pos == k {
                pos = 0;
                copy += 1;
                if copy == copies_in_section {
                    k += 1;
                    copy = 0;
                    copies_in_section <<= 1;
                }
                v = (1u128 << (k - 1)) + (copy >> self.rep_log2);
            }
        }
    }

    fn checkpoint(&self, n: u64) -> Option<Checkpoint> {
        (n >= 1).then(|| self.checkpoint_for(n))
    }

    fn has_checkpoints(&self) -> bool {
        true
    }
}
