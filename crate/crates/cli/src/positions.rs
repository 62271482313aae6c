//! Position ladders: `checkpoints:a..b`, `list:p1,p2,...` and
//! `geometric:start,count[,ratio]`.

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;
use typical::BitStream;

use crate::settings::parse_count;

pub const DEFAULT_START: u64 = 64;
pub const DEFAULT_RATIO: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionSpec {
    Checkpoints(u64, u64),
    List(Vec<u64>),
    Geometric { start: u64, count: u64, ratio: u64 },
}

impl PositionSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .with_context(|| format!("positions {s:?} must look like kind:args"))?;
        match kind {
            "checkpoints" => {
                let (a, b) = rest
                    .split_once("..")
                    .with_context(|| format!("checkpoint range {rest:?} must be a..b"))?;
                let (a, b) = (parse_count(a)?, parse_count(b)?);
                if a == 0 || a > b {
                    bail!("checkpoint range {rest:?} must satisfy 1 <= a <= b");
                }
                Ok(PositionSpec::Checkpoints(a, b))
            }
            "list" => {
                let v = rest
                    .split(',')
                    .map(parse_count)
                    .collect::<Result<Vec<u64>>>()?;
                if v.windows(2).any(|w| w[0] >= w[1]) || v.first() == Some(&0) {
                    bail!("listed positions must be positive and strictly increasing");
                }
                Ok(PositionSpec::List(v))
            }
            "geometric" => {
                let parts = rest
                    .split(',')
                    .map(parse_count)
                    .collect::<Result<Vec<u64>>>()?;
                let (start, count, ratio) = match parts[..] {
                    [s, c] => (s, c, DEFAULT_RATIO),
                    [s, c, r] => (s, c, r),
                    _ => bail!("geometric ladder takes start,count[,ratio]"),
                };
                if start == 0 || ratio < 2 || count == 0 {
                    bail!("geometric ladder needs start >= 1, ratio >= 2, count >= 1");
                }
                Ok(PositionSpec::Geometric {
                    start,
                    count,
                    ratio,
                })
            }
            other => {
                bail!("unknown positions kind {other:?}; use checkpoints:, list: or geometric:")
            }
        }
    }

    /// Default ladder `64, 128, ...` up to `limit`.
    pub fn default_up_to(limit: u64) -> Self {
        let mut count = 0;
        let mut p = DEFAULT_START;
        while p <= limit {
            count += 1;
            p = p.saturating_mul(DEFAULT_RATIO);
        }
        PositionSpec::Geometric {
            start: DEFAULT_START,
            count: count.max(1),
            ratio: DEFAULT_RATIO,
        }
    }

    pub fn resolve(&self, stream: Option<&BitStream>) -> Result<Vec<BigUint>> {
        Ok(match self {
            PositionSpec::Checkpoints(a, b) => {
                let s = stream.context("checkpoint positions need a constructed --number")?;
                s.checkpoints(*a..=*b)?
                    .into_iter()
                    .map(|c| c.position)
                    .collect()
            }
            PositionSpec::List(v) => v.iter().map(|&p| BigUint::from(p)).collect(),
            PositionSpec::Geometric {
                start,
                count,
                ratio,
            } => {
                let mut out = Vec::new();
                let mut p = BigUint::from(*start);
                for _ in 0..*count {
                    out.push(p.clone());
                    p *= *ratio;
                }
                out
            }
        })
    }
}
