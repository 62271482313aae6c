use num_bigint::BigUint;
use serde::Serializer;

/// Serializes an arbitrary-size integer as a decimal string.
pub(crate) fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
