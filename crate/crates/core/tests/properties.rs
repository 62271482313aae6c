use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use typical::constructions::{self, Polynomial};
use typical::hp::log2_biguint;
use typical::reductions::{
    action_f_prime, action_g_prime, f_prime_change_bound, log2_taylor, phi, phi_agreement_prefix,
    reduction_f, NatSeqDescriptor, Sequence, TaylorApprox,
};
use typical::{Bit, BitStream};

fn generators() -> Vec<BitStream> {
    vec![
        constructions::champernowne(),
        constructions::strictly_typical_y(),
        constructions::strictly_normal_z(2).unwrap(),
        constructions::strictly_normal_z(5).unwrap(),
        constructions::madritsch_omega(),
        constructions::omega_prime(),
        constructions::nakai_poly(Polynomial::parse("1/4,3/4").unwrap(), 2).unwrap(),
        constructions::nakai_poly(Polynomial::parse("1,-3,5").unwrap(), 2).unwrap(),
        reduction_f(NatSeqDescriptor::identity()),
        phi(&NatSeqDescriptor::parse("tail=interleave(tail=identity|tail=const:3)").unwrap()),
    ]
}

fn leaf() -> impl Strategy<Value = NatSeqDescriptor> {
    prop_oneof![
        (1u64..100).prop_map(|c| NatSeqDescriptor::constant(c).unwrap()),
        Just(NatSeqDescriptor::identity()),
        (1i64..9, 1i64..9, -5i64..5, 1i64..4).prop_map(|(p, q, r, s)| {
            NatSeqDescriptor::affine(
                BigRational::new(p.into(), q.into()),
                BigRational::new(r.into(), s.into()),
            )
            .unwrap()
        }),
    ]
}

fn descriptor() -> impl Strategy<Value = NatSeqDescriptor> {
    let with_prefix = |d: BoxedStrategy<NatSeqDescriptor>| {
        (d, proptest::collection::vec(1u64..50, 0..4)).prop_map(|(d, p)| d.with_prefix(p).unwrap())
    };
    let base = with_prefix(leaf().boxed()).boxed();
    prop_oneof![
        base.clone(),
        (base.clone(), base).prop_map(|(a, b)| NatSeqDescriptor::interleave(a, b)),
    ]
}

#[test]
fn nakai_identity_is_champernowne() {
    let a = constructions::nakai_poly(Polynomial::identity(), 2)
        .unwrap()
        .take(100_000, u64::MAX)
        .unwrap();
    let b = constructions::champernowne()
        .take(100_000, u64::MAX)
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn prefixes_extend_each_other() {
    for s in generators() {
        let long = s.take(5000, u64::MAX).unwrap();
        for n in [1u64, 17, 640, 4999] {
            let short = s.take(n, u64::MAX).unwrap();
            assert_eq!(short.digits(), &long.digits()[..n as usize], "{}", s.kind());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fill_agrees_with_positional(start in 1u64..2_000_000, len in 1usize..300) {
        for s in generators() {
            let mut buf = vec![Bit::Zero; len];
            s.fill(start, &mut buf);
            for (k, b) in buf.iter().enumerate() {
                let i = start + k as u64;
                prop_assert_eq!(*b, s.digit_at(&BigUint::from(i)), "{} at {}", s.kind(), i);
            }
        }
    }

    #[test]
    fn descriptor_display_round_trips(d in descriptor()) {
        let text = d.to_string();
        let back = NatSeqDescriptor::parse(&text).unwrap();
        prop_assert_eq!(&back, &d);
        for n in 1..40 {
            prop_assert!(back.term(n) >= 1);
            prop_assert_eq!(back.term(n), d.term(n));
        }
    }

    #[test]
    fn parity_split_is_consistent(d in descriptor()) {
        let c = d.classify();
        prop_assert_eq!(c.in_c, d.even().in_p3());
        prop_assert_eq!(c.in_d, d.odd().in_p3());
        prop_assert_eq!(c.in_p3, c.in_c && c.in_d);
        for k in 1..30 {
            prop_assert_eq!(d.odd().term(k), d.term(2 * k - 1));
            prop_assert_eq!(d.even().term(k), d.term(2 * k));
        }
    }

    #[test]
    fn reduction_f_blocks_are_ones_then_zeros(d in descriptor()) {
        let s = reduction_f(d);
        let bits = s.take(60 * 61 / 2, u64::MAX).unwrap();
        let mut start = 0usize;
        for n in 1..=60usize {
            let block = &bits.digits()[start..start + n];
            let ones = block.iter().take_while(|b| b.is_one()).count();
            prop_assert!(block[ones..].iter().all(|b| !b.is_one()));
            start += n;
        }
    }

    #[test]
    fn g_prime_only_clears_digits(d in descriptor(), start in 1u64..100_000) {
        let base = constructions::omega_prime();
        let g = action_g_prime(d, base.clone());
        let mut a = vec![Bit::Zero; 512];
        let mut b = vec![Bit::Zero; 512];
        g.fill(start, &mut a);
        base.fill(start, &mut b);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(x.as_u8() <= y.as_u8());
        }
    }

    #[test]
    fn f_prime_changes_are_bounded(d in descriptor(), n in 5u64..16) {
        let base = constructions::omega_prime();
        let f = action_f_prime(d, base.clone());
        let len = 1u64 << n;
        let a = f.take(len, len).unwrap();
        let b = base.take(len, len).unwrap();
        let diff = a.digits().iter().zip(b.digits()).filter(|(x, y)| x != y).count() as u64;
        prop_assert!(diff <= f_prime_change_bound(n));
    }

    #[test]
    fn phi_images_agree_on_shared_terms(
        shared in proptest::collection::vec(1u64..30, 1..14),
        a in descriptor(),
        b in descriptor(),
    ) {
        let k = shared.len() as u64;
        let da = a.with_prefix(shared.clone()).unwrap();
        let db = b.with_prefix(shared).unwrap();
        let n = phi_agreement_prefix(k).to_u64().unwrap().min(1 << 16);
        let x = phi(&da).take(n, u64::MAX).unwrap();
        let y = phi(&db).take(n, u64::MAX).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn taylor_error_within_bound(b in 2u64..1_000_000_000_000, m in 1u64..40) {
        let t = TaylorApprox::default_center(BigUint::from(b), m).unwrap();
        let err = (log2_taylor(&t) - log2_biguint(&BigUint::from(b))).abs().to_f64();
        let bound = 0.5f64.powi(m as i32) / ((m + 1) as f64 * std::f64::consts::LN_2);
        prop_assert!(err <= bound * (1.0 + 1e-9), "B={} M={} err={:e} bound={:e}", b, m, err, bound);
    }
}
