//! Truncated Taylor expansions of `log2` and the scaled value
//! `T(n) = 2^(1/M(n)) t(n)` the reductions are built on.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::hp::{Real, PRECISION};
use crate::reductions::Sequence;

/// Terms smaller than `2^-(PRECISION + 16)` are dropped.
const NEGLIGIBLE_EXP: i64 = -(PRECISION as i64) - 16;

#[derive(Clone, Debug)]
pub struct TaylorApprox {
    center: Real,
    order: u64,
    point: BigUint,
}

impl TaylorApprox {
    /// Requires `a > 0`, `M >= 1` and `|B - a| < a`.
    pub fn new(center: Real, order: u64, point: BigUint) -> Result<Self> {
        if center <= Real::zero() {
            return Err(Error::contract("Taylor center must be positive"));
        }
        if order == 0 {
            return Err(Error::contract("Taylor order must be at least 1"));
        }
        let b = Real::from_biguint(&point);
        if (&b - &center).abs() >= center {
            return Err(Error::contract(format!(
                "point {point} lies outside the convergence disk around {center}"
            )));
        }
        Ok(TaylorApprox {
            center,
            order,
            point,
        })
    }

    /// Expansion around the default center `2B/3`, where `(B - a)/a = 1/2`.
    pub fn default_center(point: BigUint, order: u64) -> Result<Self> {
        let a = Real::from_biguint(&point) * Real::from_u64(2) / Real::from_u64(3);
        TaylorApprox::new(a, order, point)
    }

    pub fn center(&self) -> &Real {
        &self.center
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn point(&self) -> &BigUint {
        &self.point
    }
}

/// `sum_{k=0}^{M} f^(k)(a)/k! (B - a)^k` for `f = log2`.
///
/// Written as `log2 a + sum (-1)^(k-1) x^k / (k ln 2)` with `x = (B - a)/a`.
pub fn log2_taylor(t: &TaylorApprox) -> Real {
    let x = (Real::from_biguint(&t.point) - &t.center) / &t.center;
    let mut acc = Real::zero();
    if !x.is_zero() {
        let mut power = Real::one();
        for k in 1..=t.order {
            power = &power * &x;
            if power.exponent() < NEGLIGIBLE_EXP {
                break;
            }
            let term = &power / Real::from_u64(k);
            acc = if k % 2 == 1 { acc + term } else { acc - term };
        }
    }
    t.center.log2() + acc / Real::ln2()
}

/// `f^(k)(a)` for `f = log2`, `k >= 1`: `(-1)^(k-1) (k-1)! / (a^k ln 2)`.
pub fn log2_derivative(k: u64, a: &Real) -> Real {
    assert!(k >= 1, "derivative order starts at 1");
    let mut fact = Real::one();
    for j in 1..k {
        fact = fact * Real::from_u64(j);
    }
    let v = fact / (a.powi(k as usize) * Real::ln2());
    if k % 2 == 1 {
        v
    } else {
        -v
    }
}

/// `2^(1/M)`.
pub fn root_two(m: u64) -> Real {
    (Real::ln2() / Real::from_u64(m)).exp()
}

/// `T(n) = 2^(1/M(n)) t(n)` with `M(n) = seq.term(n)`, expanded around
/// `2 B_n / 3`.
pub fn big_t(seq: &dyn Sequence, n: u64, b_n: &BigUint) -> Real {
    let m = seq.term(n);
    let t = TaylorApprox::default_center(b_n.clone(), m).expect("default center is always valid");
    root_two(m) * log2_taylor(&t)
}

/// `max(0, floor(T))`.
pub fn floor_nonneg(t: &Real) -> u64 {
    t.floor_i128()
        .map_or(u64::MAX, |v| v.clamp(0, u64::MAX as i128) as u64)
}
