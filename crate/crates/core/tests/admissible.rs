use typical::analysis::admissible::*;

fn longest_run(word: u32, n: u32) -> u32 {
    let (mut best, mut cur) = (0, 0);
    for k in (0..n).rev() {
        if (word >> k) & 1 == 1 {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

/// Brute force over all words. When `n` is a power of two the ratio
/// bounds are compared exactly in integers; otherwise `log2 n` is
/// irrational and a float comparison cannot tie.
fn enumerate(n: u32, m: u32) -> u64 {
    let admissible = |l: u32| -> bool {
        if n.is_power_of_two() {
            let k = n.trailing_zeros();
            m * l > (m - 1) * k && m * l < (m + 1) * k
        } else {
            let r = l as f64 / (n as f64).log2();
            r > 1.0 - 1.0 / m as f64 && r < 1.0 + 1.0 / m as f64
        }
    };
    (0..1u32 << n)
        .filter(|&w| admissible(longest_run(w, n)))
        .count() as u64
}

#[test]
fn n4_examples() {
    assert_eq!(admissible_runs(4, 1), Some((1, 3)));
    assert_eq!(admissible_runs(4, 50), Some((2, 2)));
    assert_eq!(admissible_blocks_count(4, 1).unwrap(), enumerate(4, 1));
    assert_eq!(admissible_blocks_count(4, 1).unwrap(), 14);
    assert_eq!(admissible_blocks_count(4, 50).unwrap(), enumerate(4, 50));
}

#[test]
fn full_run_range_counts_every_word() {
    for n in 2..=20 {
        let below = words_with_runs_at_most(n, 0);
        assert_eq!(words_with_runs_at_most(n, n) - below + 1, 1u64 << n);
    }
}

#[test]
fn dp_matches_enumeration_up_to_20() {
    for n in 2..=20u32 {
        for m in 1..=8u32 {
            assert_eq!(
                admissible_blocks_count(n, m).unwrap(),
                enumerate(n, m),
                "n={n} m={m}"
            );
        }
    }
}

#[test]
fn range_checks() {
    assert!(admissible_blocks_count(1, 1).is_err());
    assert!(admissible_blocks_count(31, 1).is_err());
    assert!(admissible_blocks_count(8, 0).is_err());
    assert!(admissible_blocks_count(30, 3).is_ok());
}
