use num_bigint::BigUint;

use super::{DisjointPair, Origin};
use crate::error::{Error, Result};
use crate::recfun::{builtin, smn, Asm, Fuel, Index, PrimOp, ReSet};

/// Default prefix on which the map is checked to be strictly increasing.
pub const MONOTONE_PREFIX: u64 = 16;
const MONOTONE_FUEL: u64 = 100_000;

/// `IMG(f, b, y)`: searches `x = 0, 1, …` for `φ_f(x) = y` and then runs
/// `φ_b(x)`; gives up (diverges) once `φ_f(x) > y`.
fn image_program() -> Index {
    let mut asm = Asm::new(3);
    let x = asm.reg();
    let top = asm.label();
    asm.bind(top);
    let fx = asm.reg();
    asm.call(fx, 0, &[x]);
    let hit = asm.reg();
    asm.prim(hit, PrimOp::Eq, &[fx, 2]);
    let miss = asm.label();
    asm.jump_if_zero(hit, miss);
    let r = asm.reg();
    asm.call(r, 1, &[x]);
    asm.halt(r);
    asm.bind(miss);
    let past = asm.reg();
    asm.prim(past, PrimOp::Lt, &[2, fx]);
    let more = asm.label();
    asm.jump_if_zero(past, more);
    asm.diverge();
    asm.bind(more);
    asm.inc(x);
    asm.jmp(top);
    Index::of(&asm.finish())
}

/// `PULL(f, i, x) = φ_i(φ_f(x))`.
fn pull_program() -> Index {
    let mut asm = Asm::new(3);
    let fx = asm.reg();
    asm.call(fx, 0, &[2]);
    let r = asm.reg();
    asm.call(r, 1, &[fx]);
    asm.halt(r);
    Index::of(&asm.finish())
}

/// An index of `W_i` pulled back through `f`: `{x : f(x) ∈ W_i}`.
pub fn pull_index(f: &Index, i: &Index) -> Index {
    smn(&pull_program(), &[f.index.clone(), i.index.clone()])
}

/// `W'(i, j) = f(w(pull(f, i), pull(f, j)))`.
pub fn transported_witness(f: &Index, w: &Index) -> Index {
    let mut asm = Asm::new(2);
    let pull = asm.constant(pull_program().index);
    let fr = asm.constant(f.index.clone());
    let gi = asm.reg();
    asm.smn(gi, pull, &[fr, 0]);
    let gj = asm.reg();
    asm.smn(gj, pull, &[fr, 1]);
    let wr = asm.constant(w.index.clone());
    let n = asm.reg();
    asm.call(n, wr, &[gi, gj]);
    let out = asm.reg();
    asm.call(out, fr, &[n]);
    asm.halt(out);
    Index::of(&asm.finish())
}

/// `(f[left], f[right])` with the transported witness.
pub fn pushforward(pair: &DisjointPair, f: &Index) -> Result<DisjointPair> {
    pushforward_on(pair, f, MONOTONE_PREFIX)
}

/// [`pushforward`] checking monotonicity on `0..=prefix` only.
pub fn pushforward_on(pair: &DisjointPair, f: &Index, prefix: u64) -> Result<DisjointPair> {
    let mut values = Vec::new();
    for x in 0..=prefix {
        let v =
            f.apply(&[BigUint::from(x)], Fuel(MONOTONE_FUEL)).value().cloned().ok_or_else(|| {
                Error::OutOfFuel(format!("map {f} does not halt at {x} within {MONOTONE_FUEL} steps"))
            })?;
        values.push(v);
    }
    pushforward_with_values(pair, f, &values)
}

/// [`pushforward`] with `f(0), f(1), ...` already known, checked for strict
/// increase instead of rerunning `f`.
pub fn pushforward_with_values(pair: &DisjointPair, f: &Index, values: &[BigUint]) -> Result<DisjointPair> {
    if let Some(x) = values.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::Input(format!("map {f} is not strictly increasing at {}", x + 1)));
    }
    let img = image_program();
    let identity = *f == Index::builtin(builtin::IDENTITY);
    let image = |s: &ReSet| {
        if identity {
            s.clone()
        } else {
            ReSet::from_index(smn(&img, &[f.index.clone(), s.index.index.clone()]))
        }
    };
    Ok(DisjointPair {
        name: format!("F[{}]", pair.name),
        left: image(&pair.left),
        right: image(&pair.right),
        witness: pair.witness.as_ref().map(|w| transported_witness(f, w)),
        origin: Origin::Pushforward { base: Box::new(pair.clone()), f: f.clone() },
    })
}

/// The first sample where `x ∈ W_{pull(f, i)} ⇔ f(x) ∈ W_i` fails, both
/// sides run with `fuel`.
pub fn pull_agrees_on(f: &Index, i: &Index, xs: impl IntoIterator<Item = u64>, fuel: Fuel) -> Option<u64> {
    let g = pull_index(f, i);
    xs.into_iter().find(|&x| {
        let x_big = BigUint::from(x);
        let pulled = g.apply(std::slice::from_ref(&x_big), fuel).halted();
        let direct = match f.apply(&[x_big], fuel).value() {
            Some(fx) => i.apply(std::slice::from_ref(fx), fuel).halted(),
            None => false,
        };
        pulled != direct
    })
}

#[cfg(test)]
mod tests {
    use super::super::{check_contract, k_pair, ContractCheck};
    use super::*;
    use crate::recfun::Decidable;

    fn doubling() -> Index {
        let mut asm = Asm::new(1);
        let r = asm.reg();
        asm.prim(r, PrimOp::Add, &[0, 0]);
        asm.halt(r);
        Index::of(&asm.finish())
    }

    #[test]
    fn doubling_images_are_even() {
        let p = pushforward(&k_pair(), &doubling()).unwrap();
        for side in [&p.left, &p.right] {
            for x in side.enumerate(60) {
                assert_eq!(&x % 2u32, BigUint::from(0u32));
            }
        }
        assert!(p.overlap_at(60).is_empty());
        assert!(p.left.semi_contains(&BigUint::from(0u32), Fuel(10_000)) == Some(true));
        assert!(p.right.semi_contains(&BigUint::from(2u32), Fuel(10_000)) == Some(true));
    }

    #[test]
    fn identity_keeps_stages() {
        let k = k_pair();
        let p = pushforward(&k, &Index::builtin(builtin::IDENTITY)).unwrap();
        assert_eq!(p.left.enumerate(40), k.left.enumerate(40));
        assert_eq!(p.right.enumerate(40), k.right.enumerate(40));
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let c = crate::recfun::constant_program(1, 3u32);
        assert!(matches!(pushforward(&k_pair(), &c), Err(Error::Input(_))));
    }

    #[test]
    fn transported_witness_matches_trace_and_avoids() {
        let p = pushforward(&k_pair(), &doubling()).unwrap();
        let wi = Decidable::residues(4, &[0]);
        let wj = Decidable::residues(4, &[1, 2]);
        let direct = super::super::ei_witness(&p, &wi.semi_decider(), &wj.semi_decider(), Fuel(100_000)).unwrap();
        let traced = p.trace(&wi.semi_decider(), &wj.semi_decider(), Fuel(100_000)).unwrap();
        assert_eq!(direct, traced.value);
        let c = check_contract(&p, &wi, &wj, Fuel(100_000)).unwrap();
        assert!(matches!(c, ContractCheck::Avoided { .. } | ContractCheck::PreconditionRefuted { .. }), "{c:?}");
    }

    #[test]
    fn pull_agrees_with_composition() {
        let i = Decidable::residues(3, &[1]).semi_decider();
        assert_eq!(pull_agrees_on(&doubling(), &i, 0..30, Fuel(10_000)), None);
    }
}
