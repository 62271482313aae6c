//! Lazy generators for the constructed numbers. Every generator is a pure
//! positional decoder and can be shared across threads.

pub mod champernowne;
pub mod madritsch;
pub mod nakai;

use std::sync::Arc;

use crate::bitstream::BitStream;
use crate::error::{Error, Result};

pub use champernowne::NotationConcat;
pub use madritsch::{MadritschSequence, MadritschStructure};
pub use nakai::{NakaiDigits, NakaiStream, Polynomial};

use champernowne::Emit;

/// Largest repetition exponent accepted by [`strictly_normal_z`].
pub const MAX_Z_EXPONENT: u32 = 32;

/// `0.1 10 11 100 101 ...` in base 2.
pub fn champernowne() -> BitStream {
    BitStream::new(NotationConcat::new(0, Emit::Notation))
}

/// The notation of `n` replaced by `1^k` when `n = 2^k - 1` and by `0^k`
/// otherwise.
pub fn strictly_typical_y() -> BitStream {
    BitStream::new(NotationConcat::new(0, Emit::MersenneIndicator))
}

/// Each binary notation written `2^a` times in a row.
pub fn strictly_normal_z(a: u32) -> Result<BitStream> {
    if a < 2 {
        return Err(Error::contract(format!("z requires a >= 2, got {a}")));
    }
    if a > MAX_Z_EXPONENT {
        return Err(Error::contract(format!(
            "z requires a <= {MAX_Z_EXPONENT}, got {a}"
        )));
    }
    Ok(BitStream::new(NotationConcat::new(a, Emit::Notation)))
}

/// Binary Nakai stream of `w`. Only `r = 2` yields a bit stream; other
/// radixes are served by [`NakaiDigits`].
pub fn nakai_poly(w: Polynomial, r: u32) -> Result<BitStream> {
    if r != 2 {
        return Err(Error::contract(format!(
            "a bit stream needs r = 2 (got r = {r}); use NakaiDigits for base-r symbols"
        )));
    }
    Ok(BitStream::new(NakaiStream::new(w)?))
}

pub fn madritsch_omega() -> BitStream {
    BitStream::new(MadritschSequence::new(
        Arc::new(MadritschStructure::new()),
        false,
    ))
}

pub fn omega_prime() -> BitStream {
    BitStream::new(MadritschSequence::new(
        Arc::new(MadritschStructure::new()),
        true,
    ))
}

/// Generator names accepted by [`by_name`].
pub const NAMES: &[&str] = &["champernowne", "y", "z", "omega", "omega-prime", "nakai"];

/// Selects a generator by name. `z` takes its exponent from `a` (default 2);
/// `nakai` needs `poly`.
pub fn by_name(name: &str, a: Option<u32>, poly: Option<&Polynomial>) -> Result<BitStream> {
    match name {
        "champernowne" => Ok(champernowne()),
        "y" => Ok(strictly_typical_y()),
        "z" => strictly_normal_z(a.unwrap_or(2)),
        "omega" => Ok(madritsch_omega()),
        "omega-prime" => Ok(omega_prime()),
        "nakai" => {
            let w =
                poly.ok_or_else(|| Error::contract("nakai requires polynomial coefficients"))?;
            nakai_poly(w.clone(), 2)
        }
        other => Err(Error::contract(format!(
            "unknown number {other:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}
