//! Concatenation of the base-`r` notations of `floor(w(1)), floor(w(2)), ...`
//! for a polynomial `w`.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bitstream::{Bit, DigitSource};
use crate::error::{Error, Result};

/// Grid on which positivity is checked.
pub const POSITIVITY_GRID: u64 = 1000;

/// Largest index below which `w` may fail to be monotone.
const MAX_IRREGULAR_PREFIX: u64 = 1_000_000;

/// A polynomial with exact rational coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Builds `a_0 + a_1 x + ... + a_n x^n` from `[a_0, ..., a_n]` and checks
    /// that it is non-constant, has a positive leading coefficient and is
    /// positive on `1..=1000`.
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::contract(
                "polynomial must have a non-zero coefficient of degree >= 1",
            ));
        }
        if !coeffs.last().unwrap().is_positive() {
            return Err(Error::contract(
                "polynomial leading coefficient must be positive",
            ));
        }
        let p = Polynomial { coeffs };
        if let Some(x) = (1..=POSITIVITY_GRID)
            .find(|&x| !p.eval(&BigRational::from_integer(x.into())).is_positive())
        {
            return Err(Error::contract(format!(
                "polynomial is not positive at x = {x}"
            )));
        }
        Ok(p)
    }

    /// Parses comma-separated coefficients, highest degree first. Each entry
    /// is an integer or `p/q`, e.g. `1/4,3/4` for `(x - 1)/4 + 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let t = part.trim();
            let c = BigRational::from_str(t)
                .map_err(|_| Error::parse(offset, format!("bad coefficient {t:?}")))?;
            coeffs.push(c);
            offset += part.len() + 1;
        }
        coeffs.reverse();
        Polynomial::new(coeffs)
    }

    pub fn identity() -> Self {
        Polynomial {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `a_0..a_n`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `floor(w(k))`, with negative values mapped to zero.
    pub fn floor_at(&self, k: &BigUint) -> BigUint {
        let v = self.eval(&BigRational::from_integer(BigInt::from(k.clone())));
        let f = v.floor().to_integer();
        match f.sign() {
            Sign::Minus => BigUint::zero(),
            _ => f.magnitude().clone(),
        }
    }

    /// Integer past which `w` is strictly increasing (a Cauchy bound on the
    /// roots of `w'`).
    fn monotone_from(&self) -> BigUint {
        let d: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect();
        let lead = d.last().unwrap().clone();
        let worst = d[..d.len() - 1]
            .iter()
            .map(|c| (c / &lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        let bound = (worst + BigRational::one()).ceil().to_integer();
        bound.magnitude().clone()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().rev().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse(s)
    }
}

/// Run of consecutive `k` whose notations share one length.
#[derive(Clone, Debug)]
struct Segment {
    first_k: BigUint,
    len: u64,
    /// 1-based index of the first digit of `first_k`'s notation.
    start: BigUint,
}

/// Positional decoder for the base-`r` symbol sequence.
#[derive(Debug)]
pub struct NakaiDigits {
    poly: Polynomial,
    radix: u32,
    /// Cumulative notation lengths for `k = 1..=k0`, where `w` may not yet
    /// be monotone.
    prefix: Vec<u64>,
    segments: RwLock<Vec<Segment>>,
}

impl NakaiDigits {
    pub fn new(poly: Polynomial, radix: u32) -> Result<Self> {
        if radix < 2 {
            return Err(Error::contract("radix must be at least 2"));
        }
        let k0 = poly.monotone_from();
        let k0 = match k0.to_u64() {
            Some(k) if k <= MAX_IRREGULAR_PREFIX => k,
            _ => {
                return Err(Error::Unsupported(format!(
                    "polynomial {poly} is not monotone before k = {k0}; at most {MAX_IRREGULAR_PREFIX} supported"
                )))
            }
        };
        let mut prefix = Vec::with_capacity(k0 as usize + 1);
        prefix.push(0u64);
        let mut acc = 0u64;
        for k in 1..=k0 {
            acc += notation_len(&poly.floor_at(&k.into()), radix);
            prefix.push(acc);
        }
        let first_k = BigUint::from(k0 + 1);
        let len = notation_len(&poly.floor_at(&first_k), radix);
        let seg = Segment {
            first_k,
            len,
            start: BigUint::from(acc + 1),
        };
        Ok(NakaiDigits {
            poly,
            radix,
            prefix,
            segments: RwLock::new(vec![seg]),
        })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn radix(&self) -> u32 {
        self.radix
    }

    /// `floor(w(k))` written in base `r`, most significant symbol first.
    pub fn notation(&self, k: &BigUint) -> Vec<u8> {
        let v = self.poly.floor_at(k);
        if v.is_zero() {
            vec![0]
        } else {
            v.to_radix_be(self.radix)
        }
    }

    /// Segment following `seg`: the first `k` whose notation is longer.
    fn next_segment(&self, seg: &Segment) -> Segment {
        let threshold = BigUint::from(self.radix).pow(seg.len as u32);
        let above = |k: &BigUint| self.poly.floor_at(k) >= threshold;
        let mut step = BigUint::one();
        while !above(&(&seg.first_k + &step)) {
            step <<= 1;
        }
        // first_k + step/2 is below the threshold, first_k + step is above.
        let mut lo = &seg.first_k + (&step >> 1);
        let mut hi = &seg.first_k + &step;
        while &hi - &lo > BigUint::one() {
            let mid = (&lo + &hi) >> 1;
            if above(&mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let count = &hi - &seg.first_k;
        Segment {
            len: notation_len(&self.poly.floor_at(&hi), self.radix),
            start: &seg.start + count * seg.len,
            first_k: hi,
        }
    }

    /// `(k, offset)` such that symbol `index` is symbol `offset` of the
    /// notation of `floor(w(k))`.
    pub fn locate(&self, index: &BigUint) -> (BigUint, u64) {
        assert!(!index.is_zero(), "symbol indices are 1-based");
        let total = *self.prefix.last().unwrap();
        if let Some(i) = index.to_u64().filter(|&i| i <= total) {
            // Smallest k with prefix[k] >= i.
            let k = self.prefix.partition_point(|&c| c < i);
            return (BigUint::from(k as u64), i - self.prefix[k - 1] - 1);
        }
        {
            let segs = self.segments.read().unwrap();
            if let Some(hit) = find_segment(&segs, index) {
                return hit;
            }
        }
        let mut segs = self.segments.write().unwrap();
        loop {
            if let Some(hit) = find_segment(&segs, index) {
                return hit;
            }
            let next = self.next_segment(segs.last().unwrap());
            segs.push(next);
        }
    }

    pub fn symbol_at(&self, index: &BigUint) -> u8 {
        let (k, off) = self.locate(index);
        self.notation(&k)[off as usize]
    }

    /// Symbols `start, start + 1, ...` written into `out`.
    pub fn fill_symbols(&self, start: &BigUint, out: &mut [u8]) {
        if out.is_empty() {
            return;
        }
        let (mut k, mut off) = self.locate(start);
        let mut word = self.notation(&k);
        for slot in out.iter_mut() {
            *slot = word[off as usize];
            off += 1;
            if off as usize == word.len() {
                k += 1u32;
                off = 0;
                word = self.notation(&k);
            }
        }
    }
}

fn find_segment(segs: &[Segment], index: &BigUint) -> Option<(BigUint, u64)> {
    // The last segment is open-ended only once its successor is known, so it
    // can only answer for indices below the successor's start.
    for w in segs.windows(2) {
        if *index < w[1].start {
            let rel = index - &w[0].start;
            let k = &w[0].first_k + &rel / w[0].len;
            let off = (&rel % w[0].len).to_u64().unwrap();
            return Some((k, off));
        }
    }
    None
}

fn notation_len(v: &BigUint, radix: u32) -> u64 {
    if v.is_zero() {
        return 1;
    }
    if radix == 2 {
        return v.bits();
    }
    let mut len = 1;
    let mut p = BigUint::from(radix);
    while p <= *v {
        p *= radix;
        len += 1;
    }
    len
}

/// Binary (`r = 2`) Nakai stream.
#[derive(Debug)]
pub struct NakaiStream(NakaiDigits);

impl NakaiStream {
    pub fn new(poly: Polynomial) -> Result<Self> {
        Ok(NakaiStream(NakaiDigits::new(poly, 2)?))
    }
}

impl DigitSource for NakaiStream {
    fn label(&self) -> String {
        format!("nakai(w={})", self.0.poly)
    }

    fn digit_at(&self, index: &BigUint) -> Bit {
        Bit::from_bool(self.0.symbol_at(index) == 1)
    }

    fn fill(&self, start: u64, out: &mut [Bit]) {
        let mut buf = vec![0u8; out.len()];
        self.0.fill_symbols(&BigUint::from(start), &mut buf);
        for (slot, s) in out.iter_mut().zip(buf) {
            *slot = Bit::from_bool(s == 1);
        }
    }
}
