use num_bigint::BigUint;
use typical::analysis::typicality::*;
use typical::bitstream::BitStream;
use typical::bitstream::{Bit, Constant};
use typical::error::Error;
use typical::par::Exec;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() < tol
}

#[test]
fn ratio_examples() {
    let r = typicality_ratio(&2u32.into(), &4u32.into()).unwrap();
    assert_eq!(r.to_f64(), 1.0);
    let r = typicality_ratio(&3u32.into(), &17u32.into()).unwrap();
    assert!(close(r.to_f64(), 3.0 / 17f64.log2(), 1e-15));
    assert!(close(r.to_f64(), 0.7339, 1e-4));
    // Champernowne checkpoint n = 20.
    let p = BigUint::from(19u64 * (1 << 20) + 1);
    let r = typicality_ratio(&20u32.into(), &p).unwrap();
    assert!(close(r.to_f64(), 0.8248, 1e-4));
    assert!(close(r.to_f64(), 20.0 / (20.0 + 20f64.log2()), 0.01));
}

#[test]
fn ratio_rejects_small_n() {
    assert!(typicality_ratio(&0u32.into(), &1u32.into()).is_err());
}

#[test]
fn all_ones_series() {
    let s = BitStream::new(Constant(Bit::One));
    let rows = typicality_series(&s, &[16u32.into()], 100, Exec::Sequential).unwrap();
    assert_eq!(rows[0].l, 16u32.into());
    assert_eq!(rows[0].ratio.to_f64(), 4.0);
}

#[test]
fn beyond_cap_without_metadata_is_a_resource_error() {
    let s = BitStream::new(Constant(Bit::One));
    let err = typicality_series(&s, &[1000u32.into()], 100, Exec::Sequential).unwrap_err();
    assert!(matches!(err, Error::Resource { cap: 100, .. }));
}

#[test]
fn tail_windows() {
    let v: Vec<f64> = (0..10).map(|x| x as f64).collect();
    let t = tail_estimate(&v, 0.5).unwrap();
    assert_eq!((t.samples, t.min, t.max), (5, 5.0, 9.0));
    let (q3, q4) = last_quartiles(&v).unwrap();
    assert_eq!((q3.min, q3.max, q4.min, q4.max), (5.0, 6.0, 7.0, 9.0));
}
