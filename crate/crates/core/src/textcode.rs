//! Bijective base-256 numbering of byte strings.
//!
//! The empty string is 0; every natural number is the code of exactly one
//! byte string. Program indices and sentence Gödel numbers are both built on
//! top of this, so code arithmetic stays linear in the length of the text.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn encode(bytes: &[u8]) -> BigUint {
    let mut n = BigUint::zero();
    for &b in bytes {
        n = (n << 8u32) + BigUint::from(b as u32 + 1);
    }
    n
}

pub fn decode(n: &BigUint) -> Vec<u8> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let base = BigUint::from(256u32);
    while !n.is_zero() {
        n -= BigUint::one();
        let digit = (&n % &base).to_u32_digits().first().copied().unwrap_or(0);
        out.push(digit as u8);
        n /= &base;
    }
    out.reverse();
    out
}

pub fn encode_str(s: &str) -> BigUint {
    encode(s.as_bytes())
}

/// The string coded by `n`, if the bytes are valid UTF-8.
pub fn decode_str(n: &BigUint) -> Option<String> {
    String::from_utf8(decode(n)).ok()
}
