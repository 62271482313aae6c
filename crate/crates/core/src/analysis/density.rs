//! Index sets `A ⊆ {1, 2, ...}` and their counting densities.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{chunk_ranges, Exec};

/// A deterministic membership predicate on positive integers.
pub trait IndexSet: Send + Sync {
    fn describe(&self) -> String;

    fn contains(&self, m: &BigUint) -> bool;

    fn contains_u64(&self, m: u64) -> bool {
        self.contains(&BigUint::from(m))
    }

    /// `|A ∩ {lo..=hi}|`; implementations with a closed form override this.
    fn count_between(&self, lo: u64, hi: u64) -> u64 {
        (lo..=hi).filter(|&m| self.contains_u64(m)).count() as u64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub n: u64,
    pub count: u64,
    #[serde(skip)]
    pub density: BigRational,
}

const COUNT_CHUNK: u64 = 1 << 18;

/// `|A ∩ {1..n}| / n` at each position (ascending).
pub fn density_series(
    set: &dyn IndexSet,
    positions: &[u64],
    exec: Exec,
) -> Result<Vec<DensityRow>> {
    if positions.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::contract("positions must be ascending"));
    }
    if positions.first() == Some(&0) {
        return Err(Error::contract("density positions must be at least 1"));
    }
    let mut work = Vec::new();
    let mut prev = 0u64;
    for (k, &p) in positions.iter().enumerate() {
        for (s, e) in chunk_ranges(prev + 1, p, COUNT_CHUNK) {
            work.push((k, s, e));
        }
        prev = prev.max(p);
    }
    let counts = exec.map(work.clone(), |(_, s, e)| set.count_between(s, e));
    let mut acc = 0u64;
    let mut next_item = 0;
    let mut out = Vec::with_capacity(positions.len());
    for (k, &n) in positions.iter().enumerate() {
        while next_item < work.len() && work[next_item].0 == k {
            acc += counts[next_item];
            next_item += 1;
        }
        out.push(DensityRow {
            n,
            count: acc,
            density: BigRational::new(BigInt::from(acc), BigInt::from(n)),
        });
    }
    Ok(out)
}

pub struct EvenNumbers;

impl IndexSet for EvenNumbers {
    fn describe(&self) -> String {
        "even".into()
    }

    fn contains(&self, m: &BigUint) -> bool {
        !m.bit(0)
    }

    fn count_between(&self, lo: u64, hi: u64) -> u64 {
        hi / 2 - (lo - 1) / 2
    }
}

pub struct EmptySet;

impl IndexSet for EmptySet {
    fn describe(&self) -> String {
        "empty".into()
    }

    fn contains(&self, _m: &BigUint) -> bool {
        false
    }

    fn count_between(&self, _lo: u64, _hi: u64) -> u64 {
        0
    }
}

/// A finite set, or with `complement` set, the complement of one.
pub struct FiniteSet {
    members: BTreeSet<u64>,
    complement: bool,
}

impl FiniteSet {
    pub fn new(members: impl IntoIterator<Item = u64>) -> Self {
        FiniteSet {
            members: members.into_iter().collect(),
            complement: false,
        }
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        FiniteSet {
            members: excluded.into_iter().collect(),
            complement: true,
        }
    }
}

impl IndexSet for FiniteSet {
    fn describe(&self) -> String {
        let kind = if self.complement {
            "cofinite"
        } else {
            "finite"
        };
        format!("{kind}({} listed)", self.members.len())
    }

    fn contains(&self, m: &BigUint) -> bool {
        let listed = m.to_u64().is_some_and(|v| self.members.contains(&v));
        listed != self.complement
    }

    fn count_between(&self, lo: u64, hi: u64) -> u64 {
        let listed = self.members.range(lo..=hi).count() as u64;
        if self.complement {
            hi - lo + 1 - listed
        } else {
            listed
        }
    }
}
