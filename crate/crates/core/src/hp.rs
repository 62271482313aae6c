//! Fixed-precision binary floating point used wherever a ratio or a logarithm
//! has to be carried beyond `f64`.
//!
//! [`Real`] wraps an `astro_float::BigFloat` at [`PRECISION`] bits. Constant
//! caches are kept per thread so values can be produced from rayon workers
//! without locking.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Working precision in bits.
pub const PRECISION: usize = 192;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Self {
        Real(BigFloat::from_u64(0, PRECISION))
    }

    pub fn one() -> Self {
        Real::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        Real(BigFloat::from_u64(v, PRECISION))
    }

    pub fn from_i64(v: i64) -> Self {
        Real(BigFloat::from_i64(v, PRECISION))
    }

    pub fn from_f64(v: f64) -> Self {
        Real(BigFloat::from_f64(v, PRECISION))
    }

    /// Rounds `v` to the working precision.
    pub fn from_biguint(v: &BigUint) -> Self {
        let bits = v.bits();
        let keep = PRECISION as u64 + 64;
        let (top, shift) = if bits > keep {
            (v >> (bits - keep), bits - keep)
        } else {
            (v.clone(), 0)
        };
        let radix = BigFloat::from_u64(1 << 32, PRECISION).mul(
            &BigFloat::from_u64(1 << 32, PRECISION),
            PRECISION,
            RM,
        );
        let mut acc = BigFloat::from_u64(0, PRECISION);
        for limb in top.to_u64_digits().iter().rev() {
            acc = acc.mul(&radix, PRECISION, RM).add(
                &BigFloat::from_u64(*limb, PRECISION),
                PRECISION,
                RM,
            );
        }
        Real(acc).mul_pow2(shift as i64)
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        let num = Real::from_biguint(r.numer().magnitude());
        let den = Real::from_biguint(r.denom().magnitude());
        let q = num / den;
        if r.is_negative() {
            -q
        } else {
            q
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut out = self.0.clone();
        let e = out.exponent().expect("finite value") as i64 + k;
        out.set_exponent(e as i32);
        Real(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn ln(&self) -> Self {
        with_consts(|cc| Real(self.0.ln(PRECISION, RM, cc)))
    }

    pub fn log2(&self) -> Self {
        with_consts(|cc| Real(self.0.log2(PRECISION, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        with_consts(|cc| Real(self.0.exp(PRECISION, RM, cc)))
    }

    pub fn ln2() -> Self {
        Real::from_u64(2).ln()
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, PRECISION, RM))
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(PRECISION, RM))
    }

    pub fn floor(&self) -> Self {
        Real(self.0.floor())
    }

    pub fn ceil(&self) -> Self {
        Real(self.0.ceil())
    }

    /// Integer value of an already integral `Real`, if it fits.
    pub fn to_i128(&self) -> Option<i128> {
        if !self.0.is_int() {
            return None;
        }
        let (words, _, sign, exp, _) = self.0.as_raw_parts()?;
        if self.is_zero() {
            return Some(0);
        }
        let exp = exp as i64;
        if exp > 126 {
            return None;
        }
        let mut mag: u128 = 0;
        let mut taken = 0i64;
        for w in words.iter().rev() {
            if taken >= exp {
                break;
            }
            let bits_here = (exp - taken).min(64);
            let part = (*w >> (64 - bits_here)) as u128;
            mag = (mag << bits_here) | part;
            taken += bits_here;
        }
        if taken < exp {
            mag <<= exp - taken;
        }
        Some(if sign == Sign::Neg {
            -(mag as i128)
        } else {
            mag as i128
        })
    }

    /// `floor(self)` as an integer, if it fits in an `i128`.
    pub fn floor_i128(&self) -> Option<i128> {
        self.floor().to_i128()
    }

    /// Nearest `f64` (the conversion truncates beyond 64 mantissa bits).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().expect("non-empty mantissa");
        let mag = (top as f64) * 2f64.powi(exp - 64);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Base-2 exponent `e` with `2^(e-1) <= |self| < 2^e`.
    pub fn exponent(&self) -> i64 {
        self.0.exponent().map(i64::from).unwrap_or(i64::MIN)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_sig_string(&self, digits: usize) -> String {
        format_sig(self.to_f64(), digits)
    }
}

/// Formats `x` with `digits` significant digits, plain notation when the
/// magnitude is moderate.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// `log2(n)` at working precision. `n` must be non-zero.
pub fn log2_biguint(n: &BigUint) -> Real {
    assert!(!n.is_zero(), "log2 of zero");
    let bits = n.bits();
    let keep = PRECISION as u64;
    if bits <= keep {
        Real::from_biguint(n).log2()
    } else {
        let shift = bits - keep;
        Real::from_biguint(&(n >> shift)).log2() + Real::from_u64(shift)
    }
}

pub fn log2_u64(n: u64) -> Real {
    log2_biguint(&BigUint::from(n))
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sig_string(17))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sig_string(12))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(self.0.$method(&rhs.0, PRECISION, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);
