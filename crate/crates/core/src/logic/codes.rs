//! Gödel numbering of sentences and the connective operations on codes.
//!
//! A sentence is numbered by the text code of its canonical printing, so the
//! connectives act on codes by string concatenation.

use num_bigint::BigUint;
use num_traits::Zero;

use super::parse::parse_formula;
use super::print::text_needs_parens;
use super::syntax::Formula;
use crate::textcode;

pub fn godel(s: &Formula) -> BigUint {
    textcode::encode_str(&s.to_string())
}

/// The sentence numbered `n`, if `n` numbers a canonically printed sentence.
pub fn ungodel(n: &BigUint) -> Option<Formula> {
    let text = textcode::decode_str(n)?;
    let f = parse_formula(&text).ok()?;
    (f.is_sentence() && f.to_string() == text).then_some(f)
}

/// Whether `n` is the Gödel number of some sentence.
pub fn is_sentence_code(n: &BigUint) -> bool {
    ungodel(n).is_some()
}

fn operand(out: &mut Vec<u8>, t: &[u8]) {
    if text_needs_parens(t) {
        out.push(b'(');
        out.extend_from_slice(t);
        out.push(b')');
    } else {
        out.extend_from_slice(t);
    }
}

fn binary(a: &BigUint, op: &[u8], b: &BigUint) -> BigUint {
    let (ta, tb) = (textcode::decode(a), textcode::decode(b));
    let mut out = Vec::with_capacity(ta.len() + tb.len() + 8);
    out.push(b'(');
    operand(&mut out, &ta);
    out.extend_from_slice(op);
    operand(&mut out, &tb);
    out.push(b')');
    textcode::encode(&out)
}

/// `⌜¬φ⌝` from `⌜φ⌝`.
pub fn neg(a: &BigUint) -> BigUint {
    let mut t = vec![b'~'];
    t.extend(textcode::decode(a));
    textcode::encode(&t)
}

pub fn imp(a: &BigUint, b: &BigUint) -> BigUint {
    binary(a, b" -> ", b)
}

pub fn and(a: &BigUint, b: &BigUint) -> BigUint {
    binary(a, b" & ", b)
}

pub fn or(a: &BigUint, b: &BigUint) -> BigUint {
    binary(a, b" | ", b)
}

/// `⌜φ⌝ + 1` when `x = ⌜¬φ⌝`, otherwise 0.
pub fn un_neg(x: &BigUint) -> BigUint {
    let t = textcode::decode(x);
    match t.split_first() {
        Some((b'~', rest)) => textcode::encode(rest) + 1u32,
        _ => BigUint::zero(),
    }
}
