//! Witness transforms between effective extensibility and the filter/ideal
//! form of effective inseparability.
//!
//! An index of a theory `S` is an index of its set of theorems.

use crate::logic::sets::{axiom_program, refutation_program};
use crate::recfun::{Asm, Index};

/// `g(i, j) = f(h(i, j))`, where `h(i, j)` indexes the theory axiomatised by
/// `W_i` and the negations of `W_j`.
pub fn tei_from_eet(f: &Index) -> Index {
    let mut asm = Asm::new(2);
    let ax = asm.constant(axiom_program().index);
    let h = asm.reg();
    asm.smn(h, ax, &[0, 1]);
    let fr = asm.constant(f.index.clone());
    let out = asm.reg();
    asm.call(out, fr, &[h]);
    asm.halt(out);
    Index::of(&asm.finish())
}

/// `g(i) = f(i, h(i))`, where `h(i)` indexes `{φ : ¬φ ∈ W_i}`.
pub fn eet_from_tei(f: &Index) -> Index {
    let mut asm = Asm::new(1);
    let rf = asm.constant(refutation_program().index);
    let h = asm.reg();
    asm.smn(h, rf, &[0]);
    let fr = asm.constant(f.index.clone());
    let out = asm.reg();
    asm.call(out, fr, &[0, h]);
    asm.halt(out);
    Index::of(&asm.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::sets::{from_sets_index, refutation_index};
    use crate::recfun::Fuel;

    /// `(a, b) ↦ pair(a, b)`, to observe what the transform passes on.
    fn echo2() -> Index {
        let mut asm = Asm::new(2);
        let r = asm.reg();
        asm.prim(r, crate::recfun::PrimOp::Pair, &[0, 1]);
        asm.halt(r);
        Index::of(&asm.finish())
    }

    #[test]
    fn transforms_pass_the_expected_indices() {
        let id = Index::builtin(crate::recfun::builtin::IDENTITY);
        let g = tei_from_eet(&id);
        let e = eet_from_tei(&echo2());
        for a in 0..6u32 {
            let (ia, ib) = (Index::new(a), Index::new(a + 7));
            let out = g.apply(&[ia.index.clone(), ib.index.clone()], Fuel(10_000));
            assert_eq!(out.value(), Some(&from_sets_index(&ia, &ib).index));
            let out = e.apply(std::slice::from_ref(&ia.index), Fuel(10_000));
            let expect = crate::recfun::prim::pair(&ia.index, &refutation_index(&ia).index);
            assert_eq!(out.value(), Some(&expect));
        }
    }

    #[test]
    fn transforms_are_total_and_deterministic() {
        for f in 0..50u32 {
            let f = Index::new(f);
            assert_eq!(tei_from_eet(&f), tei_from_eet(&f));
            assert_eq!(eet_from_tei(&f), eet_from_tei(&f));
        }
    }
}
