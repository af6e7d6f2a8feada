//! Theories from pairs of RE sets, and the refutation transform on indices.

use num_bigint::BigUint;

use super::codes::godel;
use super::syntax::{Formula, Signature};
use super::theory::{Axioms, Theory};
use crate::recfun::{smn, Asm, Decidable, Index, PrimOp, ReSet};

/// `AX(i, j, x)`: halts iff `x ∈ W_i` or `x = ⌜¬φ⌝` with `⌜φ⌝ ∈ W_j`.
pub fn axiom_program() -> Index {
    let mut asm = Asm::new(3);
    let (i, j, x) = (0, 1, 2);
    let s = asm.constant(1u32);
    let hit = asm.reg();
    let u = asm.reg();
    asm.prim(u, PrimOp::UnNeg, &[x]);
    let stage = asm.label();
    let next = asm.label();
    let done = asm.label();
    asm.bind(stage);
    asm.step(hit, i, s, &[x]);
    asm.jump_if_nonzero(hit, done);
    asm.jump_if_zero(u, next);
    let phi = asm.reg();
    let one = asm.constant(1u32);
    asm.prim(phi, PrimOp::Monus, &[u, one]);
    asm.step(hit, j, s, &[phi]);
    asm.jump_if_nonzero(hit, done);
    asm.bind(next);
    asm.inc(s);
    asm.jmp(stage);
    asm.bind(done);
    asm.halt(x);
    Index::of(&asm.finish())
}

/// `h(i, j)`: an index of the axiom set `W_i ∪ {¬φ : φ ∈ W_j}`.
pub fn from_sets_index(i: &Index, j: &Index) -> Index {
    smn(&axiom_program(), &[i.index.clone(), j.index.clone()])
}

/// The theory over `signature` axiomatised by `W_i` and the negations of `W_j`,
/// with the index `h(i, j)` of its axiom set. Codes that are not sentences of
/// the signature are skipped.
pub fn theory_from_sets(signature: &Signature, i: &ReSet, j: &ReSet) -> (Theory, Index) {
    let t = Theory {
        name: format!("S({}, {})", i.index, j.index),
        signature: signature.clone(),
        axioms: Axioms::FromSets { i: i.clone(), j: j.clone() },
    };
    (t, from_sets_index(&i.index, &j.index))
}

/// `REF(i, x) = φ_i(⌜¬x⌝)`.
pub fn refutation_program() -> Index {
    let mut asm = Asm::new(2);
    let n = asm.reg();
    asm.prim(n, PrimOp::Neg, &[1]);
    let out = asm.reg();
    asm.call(out, 0, &[n]);
    asm.halt(out);
    Index::of(&asm.finish())
}

/// An index of `{⌜φ⌝ : ⌜¬φ⌝ ∈ W_i}`.
pub fn refutation_index(i: &Index) -> Index {
    smn(&refutation_program(), std::slice::from_ref(&i.index))
}

/// The finite set of the given sentence codes.
pub fn finite_sentence_set(sentences: &[Formula]) -> ReSet {
    let codes: Vec<BigUint> = sentences.iter().map(godel).collect();
    ReSet::from_decidable(Decidable::Finite { members: codes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::janiczak::axiom_a;
    use crate::logic::codes::ungodel;
    use crate::recfun::{builtin, Fuel};

    fn sentences_of(index: &Index, budget: u64) -> Vec<Formula> {
        ReSet::from_index(index.clone()).enumerate_ordered(budget).iter().filter_map(ungodel).collect()
    }

    #[test]
    fn axioms_from_sets() {
        let i = finite_sentence_set(&[axiom_a(0)]);
        let j = finite_sentence_set(&[axiom_a(1)]);
        let (t, h) = theory_from_sets(&Signature::binary("E"), &i, &j);
        let (i, j) = (i.index, j.index);
        let ax = t.axioms_prefix(10);
        assert_eq!(ax, vec![axiom_a(0), axiom_a(1).not()]);
        let x = godel(&axiom_a(1).not());
        assert!(h.apply(&[x], Fuel(100_000)).halted());
        assert!(!h.apply(&[godel(&axiom_a(1))], Fuel(100_000)).halted());
        assert_eq!(from_sets_index(&i, &j), h);
        let empty = ReSet::from_index(Index::builtin(builtin::DIVERGE));
        let (t0, _) = theory_from_sets(&Signature::binary("E"), &empty, &empty);
        assert!(t0.axioms_prefix(5).is_empty());
    }

    #[test]
    fn refutations() {
        let i = finite_sentence_set(&[axiom_a(0).not(), axiom_a(2).not().not()]).index;
        let r = refutation_index(&i);
        let a0 = godel(&axiom_a(0));
        assert!(r.apply(&[a0], Fuel(100_000)).halted());
        let nn = godel(&axiom_a(2).not());
        assert!(r.apply(std::slice::from_ref(&nn), Fuel(100_000)).halted());
        let rr = refutation_index(&r);
        assert!(rr.apply(&[godel(&axiom_a(2))], Fuel(100_000)).halted());
        assert!(!rr.apply(&[godel(&axiom_a(0))], Fuel(100_000)).halted());
        let none = refutation_index(&Index::builtin(builtin::DIVERGE));
        assert!(sentences_of(&none, 50).is_empty());
    }
}
