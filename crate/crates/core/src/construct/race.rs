//! The staged witness for `U ⊕ V` built from witnesses of `U` and `V`.
//!
//! From indices `i` of a filter `X` and `j` of an ideal `Y` it forms
//! `Z₀ = {φ : P → φ ∈ X}`, `Z₁ = {φ : ¬P → φ ∈ X}`, `Z₂ = {φ : P ∧ φ ∈ Y}`
//! and `Z₃ = {φ : ¬P ∧ φ ∈ Y}` and runs, at stage `s = 1, 2, …` with step
//! budget `b = 2^s`:
//!
//! * (a) both `f₁(k₀, k₂)` and `f₂(k₁, k₃)` halt within `b` steps, giving
//!   `θ` and `τ`: output `(P ∧ θ) ∨ (¬P ∧ τ)`;
//! * (b) otherwise, some sentence among the first `s` lies in `Z₀` and `Z₂`
//!   within `b` steps each: output `f₂(k₁, k₃)`;
//! * (c) otherwise, the same for `Z₁` and `Z₃`: output `f₁(k₀, k₂)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::codes::{and, neg, or};
use crate::logic::enumerate::{sentence_at, signature_code};
use crate::logic::{godel, prop, Signature, P};
use crate::recfun::{smn, Asm, Fuel, Index, PrimOp, Reg};

fn p_code() -> BigUint {
    godel(&prop(P))
}

/// `Z_k(a, x)`: runs `φ_a` on `P → x`, `¬P → x`, `P ∧ x` or `¬P ∧ x`.
fn z_program(k: usize) -> Index {
    let mut asm = Asm::new(2);
    let p = asm.constant(p_code());
    let guard = if k.is_multiple_of(2) {
        p
    } else {
        let np = asm.reg();
        asm.prim(np, PrimOp::Neg, &[p]);
        np
    };
    let y = asm.reg();
    asm.prim(y, if k < 2 { PrimOp::Imp } else { PrimOp::And }, &[guard, 1]);
    let out = asm.reg();
    asm.call(out, 0, &[y]);
    asm.halt(out);
    Index::of(&asm.finish())
}

/// An index of `Z_k` from the index of `X` (for `k < 2`) or of `Y`.
pub fn z_index(k: usize, a: &Index) -> Index {
    smn(&z_program(k), std::slice::from_ref(&a.index))
}

/// `RACE(f₁, f₂, σ, i, j)` where `σ` numbers the signature of `U ⊕ V`.
fn race_program() -> Index {
    let mut asm = Asm::new(5);
    let (f1, f2, sig, i, j) = (0, 1, 2, 3, 4);
    let k: Vec<Reg> = (0..4)
        .map(|n| {
            let z = asm.constant(z_program(n).index);
            let r = asm.reg();
            asm.smn(r, z, &[if n < 2 { i } else { j }]);
            r
        })
        .collect();
    let p = asm.constant(p_code());
    let np = asm.reg();
    asm.prim(np, PrimOp::Neg, &[p]);
    let one = asm.constant(1u32);
    let s = asm.constant(1u32);
    let budget = asm.constant(2u32);

    let stage = asm.label();
    let case_b = asm.label();
    asm.bind(stage);
    let a = asm.reg();
    asm.step(a, f1, budget, &[k[0], k[2]]);
    asm.jump_if_zero(a, case_b);
    let b = asm.reg();
    asm.step(b, f2, budget, &[k[1], k[3]]);
    asm.jump_if_zero(b, case_b);
    let theta = asm.reg();
    asm.prim(theta, PrimOp::Monus, &[a, one]);
    let tau = asm.reg();
    asm.prim(tau, PrimOp::Monus, &[b, one]);
    let l = asm.reg();
    asm.prim(l, PrimOp::And, &[p, theta]);
    let r = asm.reg();
    asm.prim(r, PrimOp::And, &[np, tau]);
    let out = asm.reg();
    asm.prim(out, PrimOp::Or, &[l, r]);
    asm.halt(out);

    asm.bind(case_b);
    let next = asm.label();
    let case_c = asm.label();
    let bounds = (s, budget);
    emit_meet(&mut asm, sig, bounds, k[0], k[2], f2, (k[1], k[3]), case_c);
    asm.bind(case_c);
    emit_meet(&mut asm, sig, bounds, k[1], k[3], f1, (k[0], k[2]), next);
    asm.bind(next);
    asm.inc(s);
    asm.prim(budget, PrimOp::Add, &[budget, budget]);
    asm.jmp(stage);
    Index::of(&asm.finish())
}

/// Scans the first `s` sentences for one in both `W_za` and `W_zb` within
/// `budget` steps; on a hit returns `φ_f(args)`, otherwise falls through to `done`.
#[allow(clippy::too_many_arguments)]
fn emit_meet(
    asm: &mut Asm,
    sig: Reg,
    (s, budget): (Reg, Reg),
    za: Reg,
    zb: Reg,
    f: Reg,
    args: (Reg, Reg),
    done: crate::recfun::Label,
) {
    let c = asm.reg();
    asm.konst(c, 0u32);
    let top = asm.label();
    let skip = asm.label();
    asm.bind(top);
    let more = asm.reg();
    asm.prim(more, PrimOp::Lt, &[c, s]);
    asm.jump_if_zero(more, done);
    let x = asm.reg();
    asm.prim(x, PrimOp::Sentence, &[sig, c]);
    let u = asm.reg();
    asm.step(u, za, budget, &[x]);
    asm.jump_if_zero(u, skip);
    let v = asm.reg();
    asm.step(v, zb, budget, &[x]);
    asm.jump_if_zero(v, skip);
    let out = asm.reg();
    asm.call(out, f, &[args.0, args.1]);
    asm.halt(out);
    asm.bind(skip);
    asm.inc(c);
    asm.jmp(top);
}

/// Index of the binary witness `g` for `U ⊕ V` over `signature` from
/// witnesses `f₁` of `U` and `f₂` of `V`.
pub fn tei_witness_index(w1: &Index, w2: &Index, signature: &Signature) -> Index {
    smn(&race_program(), &[w1.index.clone(), w2.index.clone(), signature_code(signature)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RaceCase {
    A,
    B,
    C,
}

/// What the race did: the case that fired, at which stage, and the output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaceOutcome {
    pub case: RaceCase,
    pub stage: u64,
    #[serde(with = "crate::bigdec")]
    pub sentence: BigUint,
}

fn halts_within(prog: &Index, args: &[BigUint], s: u64) -> Option<BigUint> {
    prog.apply(args, Fuel(s)).value().cloned()
}

/// Step budget of stage `s`.
pub fn stage_budget(s: u64) -> u64 {
    1u64.checked_shl(s as u32).unwrap_or(u64::MAX)
}

/// Runs the race stage by stage, reporting the case and stage that decide
/// the output. The output of cases (b) and (c) is computed with `fuel`.
pub fn tei_witness_oplus(
    i: &Index,
    j: &Index,
    w1: &Index,
    w2: &Index,
    signature: &Signature,
    max_stage: u64,
    fuel: Fuel,
) -> Result<RaceOutcome> {
    let k: Vec<Index> = (0..4).map(|n| z_index(n, if n < 2 { i } else { j })).collect();
    let kv = |a: usize, b: usize| [k[a].index.clone(), k[b].index.clone()];
    let sig = signature_code(signature);
    let p = p_code();
    for s in 1..=max_stage {
        let b = stage_budget(s);
        if let (Some(theta), Some(tau)) = (halts_within(w1, &kv(0, 2), b), halts_within(w2, &kv(1, 3), b)) {
            let sentence = or(&and(&p, &theta), &and(&neg(&p), &tau));
            return Ok(RaceOutcome { case: RaceCase::A, stage: s, sentence });
        }
        for (case, za, zb, f, args) in [(RaceCase::B, 0, 2, w2, kv(1, 3)), (RaceCase::C, 1, 3, w1, kv(0, 2))] {
            for c in 0..s as usize {
                let Some(x) = sentence_at(&sig, c) else { break };
                let xs = [x];
                if halts_within(&k[za], &xs, b).is_some() && halts_within(&k[zb], &xs, b).is_some() {
                    let sentence = f.apply(&args, fuel).value().cloned().ok_or_else(|| {
                        Error::OutOfFuel(format!("case {case:?} output at stage {s} with fuel {}", fuel.0))
                    })?;
                    return Ok(RaceOutcome { case, stage: s, sentence });
                }
            }
        }
    }
    Err(Error::OutOfFuel(format!("race undecided after stage {max_stage}")))
}

/// `(a, b) ↦ ⌜φ⌝` after about `delay` steps: a witness that ignores its inputs.
pub fn delayed_constant(code: &BigUint, delay: u64) -> Index {
    let mut asm = Asm::new(2);
    let n = asm.constant(delay);
    let done = asm.label();
    let top = asm.label();
    asm.bind(top);
    asm.dec(n, done);
    asm.jmp(top);
    asm.bind(done);
    let r = asm.constant(code.clone());
    asm.halt(r);
    Index::of(&asm.finish())
}
