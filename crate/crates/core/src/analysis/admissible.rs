//! Counting the length-`n` words whose longest run of ones keeps
//! `L / log2 n` inside `(1 - 1/m, 1 + 1/m)`.

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const MAX_WORD_LEN: u32 = 30;

/// Whether a longest run `l` satisfies `L / log2 n ∈ (1 - 1/m, 1 + 1/m)`.
///
/// Decided exactly: the condition is `n^(m-1) < 2^(m l) < n^(m+1)`.
pub fn run_is_admissible(l: u32, n: u32, m: u32) -> bool {
    let nn = BigUint::from(n);
    let lhs = nn.pow(m - 1);
    let rhs = nn.pow(m + 1);
    let mid = BigUint::from(1u32) << (m as u64 * l as u64);
    lhs < mid && mid < rhs
}

/// The inclusive range of admissible run lengths, or `None` if empty.
pub fn admissible_runs(n: u32, m: u32) -> Option<(u32, u32)> {
    let ok: Vec<u32> = (0..=n).filter(|&l| run_is_admissible(l, n, m)).collect();
    Some((*ok.first()?, *ok.last()?))
}

/// Number of binary words of length `n` with no run of ones longer than `k`.
pub fn words_with_runs_at_most(n: u32, k: u32) -> u64 {
    if k >= n {
        return 1u64 << n;
    }
    // tail[j] = words whose trailing run of ones has length exactly j
    let mut tail = vec![0u64; k as usize + 1];
    tail[0] = 1;
    for _ in 0..n {
        let total: u64 = tail.iter().sum();
        for j in (1..=k as usize).rev() {
            tail[j] = tail[j - 1];
        }
        tail[0] = total;
    }
    tail.iter().sum()
}

/// Size of the admissible block set for word length `n` and tolerance `1/m`.
pub fn admissible_blocks_count(n: u32, m: u32) -> Result<u64> {
    if !(2..=MAX_WORD_LEN).contains(&n) {
        return Err(Error::contract(format!(
            "word length must be in 2..={MAX_WORD_LEN}, got {n}"
        )));
    }
    if m == 0 {
        return Err(Error::contract("tolerance index m must be at least 1"));
    }
    Ok(match admissible_runs(n, m) {
        None => 0,
        Some((lo, hi)) => {
            let below = if lo == 0 {
                0
            } else {
                words_with_runs_at_most(n, lo - 1)
            };
            words_with_runs_at_most(n, hi) - below
        }
    })
}
