use num_rational::BigRational;
use num_traits::ToPrimitive;
use num_traits::Zero;
use proptest::prelude::*;
use typical::analysis::freq::*;
use typical::bitstream::{Bit, BitStream, Block};
use typical::bitstream::{Constant, Finite, Periodic, Prefix};
use typical::par::Exec;

fn naive_count(bits: &[Bit], block: &[Bit]) -> u64 {
    if block.len() > bits.len() {
        return 0;
    }
    bits.windows(block.len()).filter(|w| *w == block).count() as u64
}

fn table(s: &str, m: usize) -> FreqTable {
    let mut t = FreqTable::new(m).unwrap();
    t.feed_all(s.parse::<Prefix>().unwrap().digits());
    t
}

#[test]
fn overlapping_counts() {
    let t = table("110110", 2);
    assert_eq!(t.count(&"11".parse().unwrap()).unwrap(), 2);
    assert_eq!(table("0000", 1).count(&"1".parse().unwrap()).unwrap(), 0);
    let total: u64 = t.counts_of_len(2).iter().sum();
    assert_eq!(total, 5);
}

#[test]
fn discrepancy_examples() {
    let zeros = BitStream::new(Constant(Bit::Zero));
    let t = freq_tables_at(&zeros, &[100], 1, Exec::Sequential).unwrap();
    assert_eq!(
        normality_discrepancy(&t[0]).unwrap(),
        BigRational::new(1.into(), 2.into())
    );

    let alt = BitStream::new(Periodic::new("01".parse().unwrap()).unwrap());
    let t = freq_tables_at(&alt, &[100_000], 1, Exec::Sequential).unwrap();
    assert!(normality_discrepancy(&t[0]).unwrap().is_zero());
}

#[test]
fn discrepancy_needs_m_digits() {
    assert!(normality_discrepancy(&table("01", 3)).is_err());
}

#[test]
fn rejects_bad_block_length() {
    assert!(FreqTable::new(0).is_err());
    assert!(FreqTable::new(25).is_err());
    assert!(table("0101", 2).count(&"010".parse().unwrap()).is_err());
}

proptest! {
    #[test]
    fn counts_match_naive_and_window_identity(
        raw in proptest::collection::vec(any::<bool>(), 0..400),
        m in 1usize..6,
    ) {
        let bits: Vec<Bit> = raw.into_iter().map(Bit::from_bool).collect();
        let mut t = FreqTable::new(m).unwrap();
        for (i, &b) in bits.iter().enumerate() {
            t.feed(b);
            let n = (i + 1) as u64;
            for l in 1..=m {
                let total: u64 = t.counts_of_len(l).iter().sum();
                prop_assert_eq!(total, n.saturating_sub(l as u64 - 1));
            }
        }
        for l in 1..=m {
            for v in 0..(1u64 << l) {
                let blk = Block::from_value(v, l);
                prop_assert_eq!(t.count(&blk).unwrap(), naive_count(&bits, blk.digits()));
            }
        }
    }

    #[test]
    fn chunked_tables_match_sequential(
        raw in proptest::collection::vec(any::<bool>(), 1..2000),
        m in 1usize..5,
    ) {
        let bits: Vec<Bit> = raw.into_iter().map(Bit::from_bool).collect();
        let n = bits.len() as u64;
        let s = BitStream::new(Finite::new("t", Prefix::new(bits.clone())));
        let positions: Vec<u64> = (1..=n).step_by(53).chain([n]).collect();
        let tables = freq_tables_at(&s, &positions, m, Exec::Parallel).unwrap();
        for (p, t) in positions.iter().zip(&tables) {
            let mut seq = FreqTable::new(m).unwrap();
            seq.feed_all(&bits[..*p as usize]);
            for l in 1..=m {
                prop_assert_eq!(seq.counts_of_len(l), t.counts_of_len(l));
            }
            prop_assert_eq!(seq.position(), t.position());
        }
    }

    #[test]
    fn discrepancy_matches_float_definition(raw in proptest::collection::vec(any::<bool>(), 8..300)) {
        let bits: Vec<Bit> = raw.into_iter().map(Bit::from_bool).collect();
        let mut t = FreqTable::new(3).unwrap();
        t.feed_all(&bits);
        let n = bits.len() as f64;
        let mut expect = 0f64;
        for l in 1..=3usize {
            for v in 0..(1u64 << l) {
                let c = naive_count(&bits, Block::from_value(v, l).digits()) as f64;
                expect = expect.max((c / n - 0.5f64.powi(l as i32)).abs());
            }
        }
        let got = normality_discrepancy(&t).unwrap().to_f64().unwrap();
        prop_assert!((got - expect).abs() < 1e-12);
    }
}
