use typical::hp::log2_biguint;
use typical::hp::Real;
use typical::reductions::taylor::*;
use typical::reductions::NatSeqDescriptor;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn hand_evaluated_example() {
    let t = TaylorApprox::new(Real::from_u64(4), 2, 6u32.into()).unwrap();
    let ln2 = std::f64::consts::LN_2;
    let expected = 2.0 + 2.0 / (4.0 * ln2) - 4.0 / (2.0 * 16.0 * ln2);
    assert!(close(log2_taylor(&t).to_f64(), expected, 1e-12));
    assert!(close(expected, 2.5410, 1e-4));
}

#[test]
fn derivative_form_agrees() {
    let a = Real::from_u64(4);
    let b = Real::from_u64(6);
    for m in 1..=8u64 {
        let t = TaylorApprox::new(a.clone(), m, 6u32.into()).unwrap();
        let mut sum = a.log2();
        let mut fact = Real::one();
        for k in 1..=m {
            fact = fact * Real::from_u64(k);
            sum = sum + log2_derivative(k, &a) / &fact * (&b - &a).powi(k as usize);
        }
        assert!(close(log2_taylor(&t).to_f64(), sum.to_f64(), 1e-12));
    }
}

#[test]
fn center_at_point_is_exact() {
    for m in [1, 5, 40] {
        let t = TaylorApprox::new(Real::from_u64(1000), m, 1000u32.into()).unwrap();
        assert_eq!(log2_taylor(&t), log2_biguint(&1000u32.into()));
    }
}

#[test]
fn error_bound_and_halving() {
    let ln2 = std::f64::consts::LN_2;
    for b in [1000u64, 1_000_000] {
        let exact = log2_biguint(&b.into());
        let mut prev: Option<f64> = None;
        for m in 1..=20u64 {
            let t = TaylorApprox::default_center(b.into(), m).unwrap();
            let err = (log2_taylor(&t) - &exact).abs().to_f64();
            assert!(err <= 0.5f64.powi(m as i32) / ((m + 1) as f64 * ln2));
            if let Some(p) = prev {
                assert!(err <= p / 2.0, "B={b} M={m}");
            }
            prev = Some(err);
        }
    }
}

#[test]
fn invariant_violations() {
    assert!(TaylorApprox::new(Real::from_u64(2), 1, 6u32.into()).is_err());
    assert!(TaylorApprox::new(Real::from_u64(4), 0, 6u32.into()).is_err());
    assert!(TaylorApprox::new(Real::zero(), 1, 6u32.into()).is_err());
}

#[test]
fn big_t_ranges() {
    let one = NatSeqDescriptor::constant(1).unwrap();
    let t = big_t(&one, 1, &(1u32 << 10).into()).to_f64();
    assert!(t > 2.0 * 9.27 && t < 2.0 * 10.73);
    let id = NatSeqDescriptor::identity();
    let mut prev = f64::INFINITY;
    for m in 1..=40 {
        let t = big_t(&id, m, &(1u32 << 10).into()).to_f64();
        assert!(t < prev);
        prev = t;
    }
    assert!(close(prev, 10.0 * 2f64.powf(1.0 / 40.0), 1e-9));
    assert!(root_two(1) > root_two(2) && root_two(2) > root_two(3));
}

#[test]
fn floors() {
    assert_eq!(floor_nonneg(&Real::from_f64(3.593)), 3);
    assert_eq!(floor_nonneg(&Real::from_f64(-2.5)), 0);
}
