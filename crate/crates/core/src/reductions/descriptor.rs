//! Finitely described sequences of positive integers.
//!
//! Text form: `[prefix=3,1,4;]tail=<rule>` where `<rule>` is `const:c`,
//! `identity`, `affine:p/q,p/q` (`floor(alpha n + beta)`, `alpha > 0`) or
//! `interleave(<d1>|<d2>)` (odd terms from `d1`, even terms from `d2`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailRule {
    Const(u64),
    Identity,
    /// `floor(alpha n + beta)`, clamped to at least 1.
    Affine {
        alpha: BigRational,
        beta: BigRational,
    },
    Interleave(Box<NatSeqDescriptor>, Box<NatSeqDescriptor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatSeqDescriptor {
    pub prefix: Vec<u64>,
    pub tail: TailRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// A total sequence `n -> a_n >= 1` whose tail behaviour is decidable.
pub trait Sequence: Send + Sync + fmt::Display {
    fn term(&self, n: u64) -> u64;

    /// `liminf a_n = infinity`.
    fn in_p3(&self) -> bool;

    /// Some `N` with `a_n <= N` infinitely often, when the sequence is not
    /// in `P3`.
    fn liminf_bound(&self) -> Option<u64>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub in_p3: bool,
    /// Even-indexed terms diverge.
    pub in_c: bool,
    /// Odd-indexed terms diverge.
    pub in_d: bool,
}

impl NatSeqDescriptor {
    pub fn constant(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::contract("constant tail must be at least 1"));
        }
        Ok(NatSeqDescriptor {
            prefix: vec![],
            tail: TailRule::Const(c),
        })
    }

    pub fn identity() -> Self {
        NatSeqDescriptor {
            prefix: vec![],
            tail: TailRule::Identity,
        }
    }

    pub fn affine(alpha: BigRational, beta: BigRational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::contract("affine slope must be positive"));
        }
        Ok(NatSeqDescriptor {
            prefix: vec![],
            tail: TailRule::Affine { alpha, beta },
        })
    }

    pub fn interleave(odd: NatSeqDescriptor, even: NatSeqDescriptor) -> Self {
        NatSeqDescriptor {
            prefix: vec![],
            tail: TailRule::Interleave(Box::new(odd), Box::new(even)),
        }
    }

    pub fn with_prefix(mut self, prefix: Vec<u64>) -> Result<Self> {
        if prefix.contains(&0) {
            return Err(Error::contract("prefix terms must be at least 1"));
        }
        self.prefix = prefix;
        Ok(self)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { s, pos: 0 };
        let d = p.descriptor()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::parse(p.pos, "trailing input after descriptor"));
        }
        Ok(d)
    }

    /// Whether the terms at the given parity (or all terms) tend to infinity.
    fn diverges(&self, parity: Option<Parity>) -> bool {
        match (&self.tail, parity) {
            (TailRule::Const(_), _) => false,
            (TailRule::Identity | TailRule::Affine { .. }, _) => true,
            (TailRule::Interleave(a, b), None) => a.diverges(None) && b.diverges(None),
            (TailRule::Interleave(a, _), Some(Parity::Odd)) => a.diverges(None),
            (TailRule::Interleave(_, b), Some(Parity::Even)) => b.diverges(None),
        }
    }

    fn bound(&self, parity: Option<Parity>) -> Option<u64> {
        match (&self.tail, parity) {
            (TailRule::Const(c), _) => Some(*c),
            (TailRule::Identity | TailRule::Affine { .. }, _) => None,
            (TailRule::Interleave(a, b), None) => match (a.bound(None), b.bound(None)) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
            (TailRule::Interleave(a, _), Some(Parity::Odd)) => a.bound(None),
            (TailRule::Interleave(_, b), Some(Parity::Even)) => b.bound(None),
        }
    }

    pub fn classify(&self) -> Classification {
        Classification {
            in_p3: self.diverges(None),
            in_c: self.diverges(Some(Parity::Even)),
            in_d: self.diverges(Some(Parity::Odd)),
        }
    }

    pub fn odd(&self) -> Subsequence {
        Subsequence {
            base: self.clone(),
            parity: Parity::Odd,
        }
    }

    pub fn even(&self) -> Subsequence {
        Subsequence {
            base: self.clone(),
            parity: Parity::Even,
        }
    }

    fn tail_term(&self, n: u64) -> u64 {
        match &self.tail {
            TailRule::Const(c) => *c,
            TailRule::Identity => n,
            TailRule::Affine { alpha, beta } => {
                let v = (alpha * BigRational::from_integer(BigInt::from(n)) + beta)
                    .floor()
                    .to_integer();
                v.to_u64()
                    .unwrap_or(if v.is_negative() { 1 } else { u64::MAX })
                    .max(1)
            }
            TailRule::Interleave(a, b) => {
                if n % 2 == 1 {
                    a.term(n / 2 + 1)
                } else {
                    b.term(n / 2)
                }
            }
        }
    }
}

impl Sequence for NatSeqDescriptor {
    fn term(&self, n: u64) -> u64 {
        assert!(n >= 1, "sequence indices are 1-based");
        match self.prefix.get(n as usize - 1) {
            Some(&v) => v,
            None => self.tail_term(n),
        }
    }

    fn in_p3(&self) -> bool {
        self.diverges(None)
    }

    fn liminf_bound(&self) -> Option<u64> {
        self.bound(None)
    }
}

/// `k -> d(2k - 1)` or `k -> d(2k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsequence {
    pub base: NatSeqDescriptor,
    pub parity: Parity,
}

impl Sequence for Subsequence {
    fn term(&self, k: u64) -> u64 {
        match self.parity {
            Parity::Odd => self.base.term(2 * k - 1),
            Parity::Even => self.base.term(2 * k),
        }
    }

    fn in_p3(&self) -> bool {
        self.base.diverges(Some(self.parity))
    }

    fn liminf_bound(&self) -> Option<u64> {
        self.base.bound(Some(self.parity))
    }
}

impl fmt::Display for Subsequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let which = match self.parity {
            Parity::Odd => "odd",
            Parity::Even => "even",
        };
        write!(f, "{which}({})", self.base)
    }
}

impl fmt::Display for NatSeqDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            let p: Vec<String> = self.prefix.iter().map(u64::to_string).collect();
            write!(f, "prefix={};", p.join(","))?;
        }
        f.write_str("tail=")?;
        match &self.tail {
            TailRule::Const(c) => write!(f, "const:{c}"),
            TailRule::Identity => f.write_str("identity"),
            TailRule::Affine { alpha, beta } => write!(f, "affine:{alpha},{beta}"),
            TailRule::Interleave(a, b) => write!(f, "interleave({a}|{b})"),
        }
    }
}

impl FromStr for NatSeqDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NatSeqDescriptor::parse(s)
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.s.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected {tok:?}")))
        }
    }

    /// Longest run of characters allowed in a number token.
    fn token(&mut self, allowed: impl Fn(char) -> bool) -> (usize, &str) {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !allowed(c))
            .unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.s[start..start + len])
    }

    fn positive(&mut self) -> Result<u64> {
        let (at, t) = self.token(|c| c.is_ascii_digit());
        let v: u64 = t
            .parse()
            .map_err(|_| Error::parse(at, format!("expected a positive integer, found {t:?}")))?;
        if v == 0 {
            return Err(Error::parse(at, "terms must be at least 1"));
        }
        Ok(v)
    }

    fn rational(&mut self) -> Result<BigRational> {
        let (at, t) = self.token(|c| c.is_ascii_digit() || c == '/' || c == '-');
        BigRational::from_str(t)
            .map_err(|_| Error::parse(at, format!("expected a rational p/q, found {t:?}")))
    }

    fn descriptor(&mut self) -> Result<NatSeqDescriptor> {
        let mut prefix = Vec::new();
        if self.eat("prefix=") {
            prefix.push(self.positive()?);
            while self.eat(",") {
                prefix.push(self.positive()?);
            }
            self.expect(";")?;
        }
        self.expect("tail=")?;
        self.skip_ws();
        let at = self.pos;
        let tail = if self.eat("const:") {
            TailRule::Const(self.positive()?)
        } else if self.eat("identity") {
            TailRule::Identity
        } else if self.eat("affine:") {
            let alpha_at = self.pos;
            let alpha = self.rational()?;
            self.expect(",")?;
            let beta = self.rational()?;
            if !alpha.is_positive() {
                return Err(Error::parse(alpha_at, "affine slope must be positive"));
            }
            TailRule::Affine { alpha, beta }
        } else if self.eat("interleave(") {
            let a = self.descriptor()?;
            self.expect("|")?;
            let b = self.descriptor()?;
            self.expect(")")?;
            TailRule::Interleave(Box::new(a), Box::new(b))
        } else {
            return Err(Error::parse(
                at,
                "expected const:, identity, affine: or interleave(",
            ));
        };
        Ok(NatSeqDescriptor { prefix, tail })
    }
}
