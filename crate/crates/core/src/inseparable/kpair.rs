use super::{DisjointPair, Origin};
use crate::recfun::{fixed_point_family, Asm, Index, PrimOp, ReSet};

/// `x ↦ c` if `φ_x(x) = c`, diverging otherwise: a semi-decider of `K_c`.
pub fn k_program(c: u64) -> Index {
    let mut asm = Asm::new(1);
    let v = asm.reg();
    asm.call(v, 0, &[0]);
    let k = asm.constant(c);
    let b = asm.reg();
    asm.prim(b, PrimOp::Eq, &[v, k]);
    let no = asm.label();
    asm.jump_if_zero(b, no);
    asm.halt(v);
    asm.bind(no);
    asm.diverge();
    Index::of(&asm.finish())
}

/// `S(i, j, e, y)`: stage `s = 1, 2, …` runs `φ_i(e)` then `φ_j(e)` for `s`
/// steps; returns 1 if `e` shows up in `W_i` first and 0 if in `W_j` first.
pub fn search_body() -> Index {
    let mut asm = Asm::new(4);
    let s = asm.constant(1u32);
    let top = asm.label();
    asm.bind(top);
    let a = asm.reg();
    asm.step(a, 0, s, &[2]);
    let try_j = asm.label();
    asm.jump_if_zero(a, try_j);
    let one = asm.constant(1u32);
    asm.halt(one);
    asm.bind(try_j);
    let b = asm.reg();
    asm.step(b, 1, s, &[2]);
    let next = asm.label();
    asm.jump_if_zero(b, next);
    let zero = asm.zero();
    asm.halt(zero);
    asm.bind(next);
    asm.inc(s);
    asm.jmp(top);
    Index::of(&asm.finish())
}

/// `(K₀, K₁)` with the recursion-theorem witness: `f(i, j)` is an index `n`
/// with `φ_n = S(i, j, n, ·)`.
pub fn k_pair() -> DisjointPair {
    DisjointPair {
        name: "K".into(),
        left: ReSet::from_index(k_program(0)),
        right: ReSet::from_index(k_program(1)),
        witness: Some(fixed_point_family(&search_body(), 2, 1)),
        origin: Origin::Diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recfun::{builtin, constant_program, Decidable, Fuel, Outcome};
    use num_bigint::BigUint;

    fn in_k(c: u64, x: &BigUint, fuel: u64) -> bool {
        Index::new(x.clone()).apply(std::slice::from_ref(x), Fuel(fuel)).value() == Some(&BigUint::from(c))
    }

    #[test]
    fn constant_programs_land_in_their_component() {
        let pair = k_pair();
        let c0 = constant_program(1, 0u32);
        let c1 = constant_program(1, 1u32);
        assert!(pair.left.semi_contains(&c0.index, Fuel(10_000)) == Some(true));
        assert!(pair.right.semi_contains(&c1.index, Fuel(10_000)) == Some(true));
        assert!(in_k(0, &BigUint::from(builtin::CONST0 as u64), 100));
        assert!(in_k(1, &BigUint::from(builtin::CONST1 as u64), 100));
        assert!(!in_k(0, &BigUint::from(builtin::IDENTITY as u64), 100));
    }

    #[test]
    fn components_do_not_overlap() {
        assert!(k_pair().overlap_at(300).is_empty());
    }

    #[test]
    fn witness_of_the_pair_itself_is_outside_both() {
        let pair = k_pair();
        let n = super::super::ei_witness(&pair, &pair.left.index, &pair.right.index, Fuel(100_000)).unwrap();
        let out = Index::new(n.clone()).apply(&[n], Fuel(100_000));
        assert!(!matches!(out, Outcome::Halted(ref v) if *v <= BigUint::from(1u32)), "{out:?}");
    }

    #[test]
    fn search_prefers_w_i_within_a_stage() {
        let all = Decidable::All.semi_decider();
        let n = super::super::ei_witness(&k_pair(), &all, &all, Fuel(100_000)).unwrap();
        assert_eq!(Index::new(n.clone()).apply(&[n], Fuel(100_000)), Outcome::Halted(BigUint::from(1u32)));
    }
}
