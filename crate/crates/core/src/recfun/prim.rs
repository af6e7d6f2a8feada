//! Native implementations of [`PrimOp`].
//!
//! Every operation is total. `apply` returns the value together with its
//! step cost, or `None` when the cost would exceed `budget`; the cost of a
//! given call never depends on the budget, which keeps fuel monotone.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::program::PrimOp;
use crate::{construct, janiczak, logic};

pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

fn text_cost(v: &BigUint) -> u64 {
    1 + v.bits() / 2048
}

fn bool_nat(b: bool) -> BigUint {
    if b {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

pub fn apply(op: PrimOp, a: &[BigUint], budget: u64) -> Option<(BigUint, u64)> {
    let x = &a[0];
    let y = a.get(1);
    let arith = |v: BigUint| Some((v, 1));
    match op {
        PrimOp::Add => arith(x + y?),
        PrimOp::Monus => arith(if x > y? { x - y? } else { BigUint::zero() }),
        PrimOp::Mul => arith(x * y?),
        PrimOp::Div => arith(if y?.is_zero() { BigUint::zero() } else { x / y? }),
        PrimOp::Mod => arith(if y?.is_zero() { x.clone() } else { x % y? }),
        PrimOp::Eq => arith(bool_nat(x == y?)),
        PrimOp::Lt => arith(bool_nat(x < y?)),
        PrimOp::Pair => arith(pair(x, y?)),
        PrimOp::Fst => arith(unpair(x).0),
        PrimOp::Snd => arith(unpair(x).1),
        PrimOp::Neg | PrimOp::Imp | PrimOp::And | PrimOp::Or | PrimOp::UnNeg => {
            let v = match op {
                PrimOp::Neg => logic::codes::neg(x),
                PrimOp::Imp => logic::codes::imp(x, y?),
                PrimOp::And => logic::codes::and(x, y?),
                PrimOp::Or => logic::codes::or(x, y?),
                _ => logic::codes::un_neg(x),
            };
            let c = text_cost(&v);
            Some((v, c))
        }
        PrimOp::AtomA => {
            // the sentence grows quadratically in n
            let n = y?.to_u64().filter(|&n| n.saturating_mul(n) / 64 < budget)?;
            let v = janiczak::atom_code(x, n);
            let c = text_cost(&v) + n * n / 64;
            Some((v, c))
        }
        PrimOp::Provable => {
            let (b, c) = logic::theory::provable_by_code(x, y?, budget)?;
            Some((bool_nat(b), c))
        }
        PrimOp::XF => {
            let k = y?.to_usize()?;
            construct::xbuild::f_by_code(x, k, budget)
        }
        PrimOp::Sentence => {
            // enumeration work grows with the position
            let k = y?.to_usize().filter(|&k| (k as u64) / 16 < budget)?;
            let v = logic::enumerate::sentence_at(x, k).unwrap_or_default();
            let c = text_cost(&v) + k as u64 / 16;
            Some((v, c))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_inverts() {
        for a in 0u32..40 {
            for b in 0u32..40 {
                let z = pair(&a.into(), &b.into());
                assert_eq!(unpair(&z), (a.into(), b.into()));
            }
        }
        assert_eq!(pair(&0u32.into(), &0u32.into()), BigUint::zero());
        assert_eq!(pair(&1u32.into(), &0u32.into()), BigUint::from(1u32));
        assert_eq!(pair(&0u32.into(), &1u32.into()), BigUint::from(2u32));
    }
}
