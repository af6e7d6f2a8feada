//! A register machine with indices, fuel-bounded evaluation, s-m-n
//! specialisation, the recursion theorem and dovetailed RE sets.

mod asm;
mod machine;
pub mod prim;
mod program;
mod reset;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use asm::{Asm, Label};
pub use machine::{apply, apply_index, apply_index_counted, run, Fuel, Outcome};
pub use program::{builtin, decode, encode, Instr, PrimOp, Program, Reg};
pub use reset::{Decidable, ReSet};

/// Gödel number of a program. Serialised as `{"index": "<decimal>"}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Index {
    #[serde(with = "crate::bigdec")]
    pub index: BigUint,
}

impl Index {
    pub fn new(n: impl Into<BigUint>) -> Index {
        Index { index: n.into() }
    }

    pub fn of(p: &Program) -> Index {
        Index { index: encode(p) }
    }

    pub fn builtin(k: usize) -> Index {
        Index::new(k)
    }

    pub fn program(&self) -> Program {
        decode(&self.index)
    }

    pub fn value(&self) -> &BigUint {
        &self.index
    }

    /// `φ_self(args)` with the lenient argument convention.
    pub fn apply(&self, args: &[BigUint], fuel: Fuel) -> Outcome {
        apply_index(&self.index, args, fuel)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

pub(crate) fn smn_value(prog: &BigUint, fixed: &[BigUint]) -> BigUint {
    let arity = machine::decode_cached(prog).arity;
    let m = arity.saturating_sub(fixed.len());
    let mut asm = Asm::new(m);
    let p = asm.constant(prog.clone());
    let mut args: Vec<Reg> = fixed.iter().map(|c| asm.constant(c.clone())).collect();
    args.extend(0..m);
    let out = asm.reg();
    asm.call(out, p, &args);
    asm.halt(out);
    encode(&asm.finish())
}

/// s-m-n: an index for `y⃗ ↦ φ_i(fixed ⧺ y⃗)`.
pub fn smn(i: &Index, fixed: &[BigUint]) -> Index {
    Index { index: smn_value(&i.index, fixed) }
}

/// Steps the s-m-n wrapper adds to a run of the specialized program.
pub fn smn_overhead(i: &Index, fixed: &[BigUint]) -> u64 {
    smn(i, fixed).program().instructions.len() as u64
}

/// Whether `φ_{smn(i, fixed)}(y⃗)` with the wrapper's extra steps and
/// `φ_i(fixed ⧺ y⃗)` under `fuel` both halt with one value or both run out.
pub fn smn_agrees(i: &Index, fixed: &[BigUint], ys: &[BigUint], fuel: Fuel) -> bool {
    let mut all = fixed.to_vec();
    all.extend_from_slice(ys);
    let direct = i.apply(&all, fuel);
    let via = smn(i, fixed).apply(ys, Fuel(fuel.0.saturating_add(smn_overhead(i, fixed))));
    direct == via
}

/// Whether `φ_n(y⃗)` and `φ_{φ_t(n)}(y⃗)` agree: with `e = φ_t(n)` computed in
/// `fuel` steps, `φ_e(y⃗)` under `fuel` equals `φ_n(y⃗)` under `fuel` plus the
/// steps spent on `e` and a fixed slack; if `φ_t(n)` runs out, so must `φ_n(y⃗)`.
pub fn fixed_point_agrees(t: &Index, n: &Index, ys: &[BigUint], fuel: Fuel) -> bool {
    const SLACK: u64 = 32;
    let (e, spent) = apply_index_counted(&t.index, std::slice::from_ref(&n.index), fuel);
    match e.value() {
        None => !n.apply(ys, fuel).halted(),
        Some(e) => {
            let direct = apply_index(e, ys, fuel);
            let via = n.apply(ys, Fuel(fuel.0 + spent + SLACK));
            match direct {
                Outcome::Halted(_) => via == direct,
                // a run of φ_n includes the run of φ_e, so it cannot finish sooner
                Outcome::OutOfFuel => !n.apply(ys, fuel).halted(),
            }
        }
    }
}

/// `D_a(x, y⃗) = φ_{φ_x(x)}(y⃗)`, the diagonal used by the recursion theorem.
fn diagonal(arity: usize) -> Index {
    let mut asm = Asm::new(arity + 1);
    let e = asm.reg();
    asm.call(e, 0, &[0]);
    let out = asm.reg();
    let ys: Vec<Reg> = (1..=arity).collect();
    asm.call(out, e, &ys);
    asm.halt(out);
    Index::of(&asm.finish())
}

/// Recursion theorem: an index `n` of arity `arity` with `φ_n ≃ φ_{φ_t(n)}`.
pub fn fixed_point(t: &Index, arity: usize) -> Index {
    let d = diagonal(arity);
    // v(x) = t(smn(D, [x]))
    let mut asm = Asm::new(1);
    let dr = asm.constant(d.index.clone());
    let h = asm.reg();
    asm.smn(h, dr, &[0]);
    let tr = asm.constant(t.index.clone());
    let out = asm.reg();
    asm.call(out, tr, &[h]);
    asm.halt(out);
    let v = Index::of(&asm.finish());
    smn(&d, &[v.index])
}

/// Parametric recursion theorem. `body` has arity `params + 1 + arity` and
/// reads `(p⃗, e, y⃗)`. Returns an index of `p⃗ ↦ n` such that
/// `φ_n(y⃗) = φ_body(p⃗, n, y⃗)`.
pub fn fixed_point_family(body: &Index, params: usize, arity: usize) -> Index {
    let d = diagonal(arity);
    // vp(p⃗, x) = smn(body, [p⃗, smn(D, [x])])
    let mut asm = Asm::new(params + 1);
    let dr = asm.constant(d.index.clone());
    let h = asm.reg();
    asm.smn(h, dr, &[params]);
    let br = asm.constant(body.index.clone());
    let mut a: Vec<Reg> = (0..params).collect();
    a.push(h);
    let out = asm.reg();
    asm.smn(out, br, &a);
    asm.halt(out);
    let vp = Index::of(&asm.finish());
    // w(p⃗) = smn(D, [smn(vp, p⃗)])
    let mut asm = Asm::new(params);
    let vr = asm.constant(vp.index);
    let ps: Vec<Reg> = (0..params).collect();
    let v = asm.reg();
    asm.smn(v, vr, &ps);
    let dr = asm.constant(d.index);
    let out = asm.reg();
    asm.smn(out, dr, &[v]);
    asm.halt(out);
    Index::of(&asm.finish())
}

/// Program of the given arity returning a constant.
pub fn constant_program(arity: usize, c: impl Into<BigUint>) -> Index {
    let mut asm = Asm::new(arity);
    let r = asm.constant(c);
    asm.halt(r);
    Index::of(&asm.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> BigUint {
        BigUint::from(k)
    }

    #[test]
    fn smn_specialises_addition() {
        let add3 = smn(&Index::builtin(builtin::ADD), &[n(3)]);
        assert_eq!(add3.program().arity, 1);
        for y in 0..20u64 {
            assert_eq!(add3.apply(&[n(y)], Fuel(10_000)), Outcome::Halted(n(3 + y)));
        }
    }

    #[test]
    fn smn_projection_is_constant() {
        let c5 = smn(&Index::builtin(builtin::PROJ1_OF_2), &[n(5)]);
        for y in 0..20u64 {
            assert_eq!(c5.apply(&[n(y)], Fuel(100)), Outcome::Halted(n(5)));
        }
        assert_eq!(c5, smn(&Index::builtin(builtin::PROJ1_OF_2), &[n(5)]));
    }

    #[test]
    fn smn_overhead_is_exact() {
        for (i, fixed, y) in [(builtin::ADD, vec![n(3)], vec![n(4)]), (builtin::PROJ1_OF_2, vec![n(5)], vec![n(1)])] {
            let i = Index::builtin(i);
            let mut all = fixed.clone();
            all.extend(y.clone());
            let (_, d) = apply_index_counted(&i.index, &all, Fuel(10_000));
            let (_, v) = apply_index_counted(&smn(&i, &fixed).index, &y, Fuel(10_000));
            assert_eq!(v, d + smn_overhead(&i, &fixed));
            assert!(smn_agrees(&i, &fixed, &y, Fuel(d)));
            assert!(smn_agrees(&i, &fixed, &y, Fuel(d - 1)));
        }
    }

    #[test]
    fn fixed_point_of_constant_transform() {
        let t = constant_program(1, n(builtin::CONST0 as u64));
        let fp = fixed_point(&t, 1);
        for x in 0..10u64 {
            assert_eq!(fp.apply(&[n(x)], Fuel(100_000)), Outcome::Halted(n(0)));
            assert!(fixed_point_agrees(&t, &fp, &[n(x)], Fuel(100_000)));
        }
    }

    #[test]
    fn quine() {
        // t(e) = index of the 0-ary program returning e
        let mut asm = Asm::new(1);
        let id = asm.constant(builtin::IDENTITY);
        let out = asm.reg();
        asm.smn(out, id, &[0]);
        asm.halt(out);
        let t = Index::of(&asm.finish());
        let q = fixed_point(&t, 0);
        assert_eq!(q.apply(&[], Fuel(100_000)), Outcome::Halted(q.index.clone()));
    }

    #[test]
    fn identity_transform_fixed_point_diverges_consistently() {
        let id = Index::builtin(builtin::IDENTITY);
        let fp = fixed_point(&id, 1);
        // φ_fp = φ_{φ_id(fp)} = φ_fp: the construction recurses forever
        assert_eq!(fp.apply(&[n(0)], Fuel(10_000)), Outcome::OutOfFuel);
    }
}
