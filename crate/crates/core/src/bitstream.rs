//! Binary digits, finite blocks and prefixes, and the positional stream
//! abstraction every generator and reduction implements.
//!
//! Indices are 1-based throughout: digit 1 is the first digit after the
//! binary point.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(u8)]
pub enum Bit {
    #[default]
    Zero = 0,
    One = 1,
}

impl Bit {
    #[inline]
    pub fn from_bool(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self == Bit::One
    }

    #[inline]
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn as_char(self) -> char {
        if self.is_one() {
            '1'
        } else {
            '0'
        }
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Bit::Zero),
            1 => Ok(Bit::One),
            _ => Err(Error::contract(format!(
                "bit value must be 0 or 1, got {v}"
            ))),
        }
    }
}

fn parse_bits(s: &str) -> Result<Vec<Bit>> {
    s.char_indices()
        .map(|(pos, c)| match c {
            '0' => Ok(Bit::Zero),
            '1' => Ok(Bit::One),
            other => Err(Error::parse(
                pos,
                format!("expected '0' or '1', found {other:?}"),
            )),
        })
        .collect()
}

fn write_bits(f: &mut fmt::Formatter<'_>, bits: &[Bit]) -> fmt::Result {
    for b in bits {
        write!(f, "{}", b.as_char())?;
    }
    Ok(())
}

/// A finite block of digits. The empty block is the identity for concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Block(Vec<Bit>);

impl Block {
    pub fn new(digits: Vec<Bit>) -> Self {
        Block(digits)
    }

    pub fn empty() -> Self {
        Block(Vec::new())
    }

    /// The `len`-digit binary notation of `value`, most significant digit first.
    pub fn from_value(value: u64, len: usize) -> Self {
        Block(
            (0..len)
                .rev()
                .map(|k| Bit::from_bool((value >> k) & 1 == 1))
                .collect(),
        )
    }

    /// Inverse of [`Block::from_value`].
    pub fn value(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, b| (acc << 1) | b.as_u8() as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[Bit] {
        &self.0
    }

    pub fn concat(&self, other: &Block) -> Block {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Block(v)
    }

    pub fn repeat(&self, times: usize) -> Block {
        Block(self.0.repeat(times))
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s).map(Block)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.0)
    }
}

/// The first `n` digits of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Prefix(Vec<Bit>);

impl Prefix {
    pub fn new(digits: Vec<Bit>) -> Self {
        Prefix(digits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[Bit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Bit> {
        self.0
    }

    /// ASCII form: one `'0'`/`'1'` per digit, newline-terminated.
    pub fn to_ascii(&self) -> String {
        let mut s: String = self.0.iter().map(|b| b.as_char()).collect();
        s.push('\n');
        s
    }

    /// Parses the ASCII form. Trailing line terminators are accepted.
    pub fn from_ascii(s: &str) -> Result<Self> {
        parse_bits(s.trim_end_matches(['\n', '\r'])).map(Prefix)
    }

    /// Packed form: eight digits per byte, first digit in the most significant
    /// bit, final partial byte zero-padded. The length is carried separately.
    pub fn to_packed(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (k, b)| acc | (b.as_u8() << (7 - k)))
            })
            .collect()
    }

    pub fn from_packed(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() * 8 < len {
            return Err(Error::contract(format!(
                "packed input holds {} digits, {len} requested",
                bytes.len() * 8
            )));
        }
        Ok(Prefix(
            (0..len)
                .map(|i| Bit::from_bool((bytes[i / 8] >> (7 - i % 8)) & 1 == 1))
                .collect(),
        ))
    }
}

impl FromStr for Prefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s).map(Prefix)
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.0)
    }
}

/// Distance between two equal-length prefixes: `0` if equal, otherwise
/// `2^-(k-1)` where `k` is the first differing index.
pub fn metric_d(x: &Prefix, y: &Prefix) -> Result<BigRational> {
    if x.len() != y.len() {
        return Err(Error::contract(format!(
            "metric_d needs equal-length prefixes, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::contract(
            "metric_d needs prefixes of length at least 1",
        ));
    }
    Ok(match x.0.iter().zip(&y.0).position(|(a, b)| a != b) {
        None => BigRational::zero(),
        Some(k0) => BigRational::new(BigInt::one(), BigInt::one() << k0),
    })
}

/// `sum x_i 2^-i` over the prefix, as an exact dyadic rational.
pub fn real_value(p: &Prefix) -> BigRational {
    let n = p.len();
    let numer = p.0.iter().fold(BigUint::zero(), |acc, b| {
        (acc << 1u32) + BigUint::from(b.as_u8())
    });
    BigRational::new(BigInt::from(numer), BigInt::one() << n)
}

/// Whether `p` lies in the cylinder of sequences starting with `b`.
pub fn cylinder_contains(b: &Block, p: &Prefix) -> Result<bool> {
    if b.len() > p.len() {
        return Err(Error::contract(format!(
            "cylinder block of length {} is longer than prefix of length {}",
            b.len(),
            p.len()
        )));
    }
    Ok(p.0[..b.len()] == b.0[..])
}

/// A position at which a construction's maximal run of ones is known exactly
/// from its combinatorial structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    pub n: u64,
    #[serde(serialize_with = "crate::util::ser_decimal")]
    pub position: BigUint,
    #[serde(serialize_with = "crate::util::ser_decimal")]
    pub exact_l: BigUint,
}

/// A deterministic positional digit generator.
///
/// Implementations must be pure: `digit_at` returns the same digit for the
/// same index on every call and from every thread, and `fill` must agree with
/// `digit_at`.
pub trait DigitSource: Send + Sync {
    fn label(&self) -> String;

    /// Digit at 1-based `index`.
    fn digit_at(&self, index: &BigUint) -> Bit;

    fn digit_at_u64(&self, index: u64) -> Bit {
        self.digit_at(&BigUint::from(index))
    }

    /// Writes digits `start, start + 1, ...` into `out`.
    fn fill(&self, start: u64, out: &mut [Bit]) {
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.digit_at_u64(start + k as u64);
        }
    }

    /// Exact checkpoint `n`, when the construction defines one.
    fn checkpoint(&self, _n: u64) -> Option<Checkpoint> {
        None
    }

    fn has_checkpoints(&self) -> bool {
        false
    }

    /// Checkpoint whose position equals `position`. The default scan assumes
    /// positions grow at least geometrically in `n`.
    fn checkpoint_at(&self, position: &BigUint) -> Option<Checkpoint> {
        let limit = position.bits() + 2;
        for n in 1..=limit {
            let cp = self.checkpoint(n)?;
            match cp.position.cmp(position) {
                std::cmp::Ordering::Equal => return Some(cp),
                std::cmp::Ordering::Greater => return None,
                std::cmp::Ordering::Less => {}
            }
        }
        None
    }
}

/// Shared handle to a [`DigitSource`].
#[derive(Clone)]
pub struct BitStream {
    source: Arc<dyn DigitSource>,
}

impl fmt::Debug for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BitStream")
            .field("kind", &self.kind())
            .finish()
    }
}

impl BitStream {
    pub fn new(source: impl DigitSource + 'static) -> Self {
        BitStream {
            source: Arc::new(source),
        }
    }

    pub fn from_arc(source: Arc<dyn DigitSource>) -> Self {
        BitStream { source }
    }

    pub fn kind(&self) -> String {
        self.source.label()
    }

    pub fn digit_at(&self, index: &BigUint) -> Bit {
        debug_assert!(!index.is_zero(), "digit indices are 1-based");
        match index.to_u64() {
            Some(i) => self.source.digit_at_u64(i),
            None => self.source.digit_at(index),
        }
    }

    pub fn digit_at_u64(&self, index: u64) -> Bit {
        debug_assert!(index >= 1, "digit indices are 1-based");
        self.source.digit_at_u64(index)
    }

    pub fn fill(&self, start: u64, out: &mut [Bit]) {
        debug_assert!(start >= 1, "digit indices are 1-based");
        self.source.fill(start, out)
    }

    /// Digits `1..=n`, refusing to materialize more than `cap` digits.
    pub fn take(&self, n: u64, cap: u64) -> Result<Prefix> {
        if n > cap {
            return Err(Error::Resource {
                what: format!("take({})", self.kind()),
                requested: n.to_string(),
                cap,
            });
        }
        let mut out = vec![Bit::Zero; n as usize];
        if n > 0 {
            self.fill(1, &mut out);
        }
        Ok(Prefix(out))
    }

    /// Sequential digit iterator starting at `start`.
    pub fn digits(&self, start: u64) -> Digits {
        Digits {
            stream: self.clone(),
            next: start,
            buf: Vec::new(),
            pos: 0,
        }
    }

    pub fn has_checkpoints(&self) -> bool {
        self.source.has_checkpoints()
    }

    pub fn checkpoint(&self, n: u64) -> Result<Checkpoint> {
        if !self.source.has_checkpoints() {
            return Err(Error::Unsupported(format!(
                "stream {} carries no checkpoint metadata",
                self.kind()
            )));
        }
        self.source.checkpoint(n).ok_or_else(|| {
            Error::Unsupported(format!("stream {} defines no checkpoint {n}", self.kind()))
        })
    }

    pub fn checkpoints(&self, ns: impl IntoIterator<Item = u64>) -> Result<Vec<Checkpoint>> {
        ns.into_iter().map(|n| self.checkpoint(n)).collect()
    }

    /// The checkpoint sitting exactly at `position`, if any.
    pub fn checkpoint_at(&self, position: &BigUint) -> Option<Checkpoint> {
        if !self.source.has_checkpoints() {
            return None;
        }
        self.source.checkpoint_at(position)
    }
}

const DIGIT_BUF: usize = 4096;

pub struct Digits {
    stream: BitStream,
    next: u64,
    buf: Vec<Bit>,
    pos: usize,
}

impl Iterator for Digits {
    type Item = Bit;

    fn next(&mut self) -> Option<Bit> {
        if self.pos == self.buf.len() {
            self.buf.resize(DIGIT_BUF, Bit::Zero);
            self.stream.fill(self.next, &mut self.buf);
            self.next += DIGIT_BUF as u64;
            self.pos = 0;
        }
        let b = self.buf[self.pos];
        self.pos += 1;
        Some(b)
    }
}

/// The constant sequence.
#[derive(Clone, Debug)]
pub struct Constant(pub Bit);

impl DigitSource for Constant {
    fn label(&self) -> String {
        format!("constant-{}", self.0.as_char())
    }

    fn digit_at(&self, _index: &BigUint) -> Bit {
        self.0
    }

    fn fill(&self, _start: u64, out: &mut [Bit]) {
        out.fill(self.0);
    }
}

/// A periodic sequence repeating a fixed non-empty block.
#[derive(Clone, Debug)]
pub struct Periodic(Block);

impl Periodic {
    pub fn new(period: Block) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::contract("periodic stream needs a non-empty period"));
        }
        Ok(Periodic(period))
    }
}

impl DigitSource for Periodic {
    fn label(&self) -> String {
        format!("periodic-{}", self.0)
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        let len = BigUint::from(self.0.len());
        let r = ((index - 1u32) % len).to_usize().expect("residue fits");
        self.0.digits()[r]
    }

    fn digit_at_u64(&self, index: u64) -> Bit {
        self.0.digits()[((index - 1) % self.0.len() as u64) as usize]
    }
}

/// A finite digit sequence followed by zeros (the terminating expansion of a
/// dyadic rational).
#[derive(Clone, Debug)]
pub struct Finite {
    label: String,
    digits: Arc<Vec<Bit>>,
}

impl Finite {
    pub fn new(label: impl Into<String>, prefix: Prefix) -> Self {
        Finite {
            label: label.into(),
            digits: Arc::new(prefix.into_digits()),
        }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

impl DigitSource for Finite {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        index.to_u64().map_or(Bit::Zero, |i| self.digit_at_u64(i))
    }

    fn digit_at_u64(&self, index: u64) -> Bit {
        self.digits
            .get((index - 1) as usize)
            .copied()
            .unwrap_or(Bit::Zero)
    }
}
