use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{Asm, Fuel, Index, PrimOp, Reg};

/// A recursive set given by a description whose membership we can compute
/// exactly. `decider()` builds a total 0/1 program for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decidable {
    Empty,
    All,
    /// `{x : x mod modulus ∈ residues}`
    Residues {
        modulus: u64,
        residues: Vec<u64>,
    },
    Finite {
        #[serde(with = "crate::bigdec::vec")]
        members: Vec<BigUint>,
    },
    /// `{x : x < bound}`
    Below {
        #[serde(with = "crate::bigdec")]
        bound: BigUint,
    },
    Union {
        parts: Vec<Decidable>,
    },
    Complement {
        of: Box<Decidable>,
    },
}

impl Decidable {
    pub fn residues(modulus: u64, residues: &[u64]) -> Decidable {
        Decidable::Residues { modulus, residues: residues.to_vec() }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(xs: I) -> Decidable {
        Decidable::Finite { members: xs.into_iter().map(BigUint::from).collect() }
    }

    pub fn union(parts: Vec<Decidable>) -> Decidable {
        Decidable::Union { parts }
    }

    pub fn complement(self) -> Decidable {
        Decidable::Complement { of: Box::new(self) }
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        match self {
            Decidable::Empty => false,
            Decidable::All => true,
            Decidable::Residues { modulus, residues } => {
                if *modulus == 0 {
                    return false;
                }
                let r = (x % modulus).to_u64().unwrap_or(0);
                residues.iter().any(|&q| q % modulus == r)
            }
            Decidable::Finite { members } => members.contains(x),
            Decidable::Below { bound } => x < bound,
            Decidable::Union { parts } => parts.iter().any(|p| p.contains(x)),
            Decidable::Complement { of } => !of.contains(x),
        }
    }

    /// Emits code leaving 1 or 0 in a fresh register according to membership of `x`.
    fn emit(&self, asm: &mut Asm, x: Reg) -> Reg {
        let out = asm.reg();
        match self {
            Decidable::Empty => asm.konst(out, 0u32),
            Decidable::All => asm.konst(out, 1u32),
            Decidable::Residues { modulus, residues } => {
                let m = asm.constant(*modulus);
                let r = asm.reg();
                asm.prim(r, PrimOp::Mod, &[x, m]);
                let cs: Vec<BigUint> = residues.iter().map(|&q| BigUint::from(q % modulus.max(&1))).collect();
                let bits: Vec<Reg> =
                    if *modulus == 0 { vec![] } else { cs.iter().map(|c| eq_const(asm, r, c)).collect() };
                or_into(asm, out, &bits);
            }
            Decidable::Finite { members } => {
                let bits: Vec<Reg> = members.iter().map(|c| eq_const(asm, x, c)).collect();
                or_into(asm, out, &bits);
            }
            Decidable::Below { bound } => {
                let b = asm.constant(bound.clone());
                asm.prim(out, PrimOp::Lt, &[x, b]);
            }
            Decidable::Union { parts } => {
                let bits: Vec<Reg> = parts.iter().map(|p| p.emit(asm, x)).collect();
                or_into(asm, out, &bits);
            }
            Decidable::Complement { of } => {
                let inner = of.emit(asm, x);
                let one = asm.constant(1u32);
                asm.prim(out, PrimOp::Monus, &[one, inner]);
            }
        }
        out
    }

    /// Total unary program returning 1 on members and 0 elsewhere.
    pub fn decider(&self) -> Index {
        let mut asm = Asm::new(1);
        let r = self.emit(&mut asm, 0);
        asm.halt(r);
        Index::of(&asm.finish())
    }

    /// Unary program halting exactly on members.
    pub fn semi_decider(&self) -> Index {
        let mut asm = Asm::new(1);
        let r = self.emit(&mut asm, 0);
        let no = asm.label();
        asm.jump_if_zero(r, no);
        asm.halt(r);
        asm.bind(no);
        asm.diverge();
        Index::of(&asm.finish())
    }
}

fn eq_const(asm: &mut Asm, x: Reg, c: &BigUint) -> Reg {
    let k = asm.constant(c.clone());
    let b = asm.reg();
    asm.prim(b, PrimOp::Eq, &[x, k]);
    b
}

fn or_into(asm: &mut Asm, out: Reg, bits: &[Reg]) {
    let acc = asm.reg();
    for b in bits {
        asm.prim(acc, PrimOp::Add, &[acc, *b]);
    }
    let z = asm.zero();
    asm.prim(out, PrimOp::Lt, &[z, acc]);
}

/// `W_index = dom φ_index`, optionally with an exact description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReSet {
    pub index: Index,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decidable: Option<Decidable>,
}

impl ReSet {
    pub fn from_index(index: Index) -> ReSet {
        ReSet { index, decidable: None }
    }

    pub fn from_decidable(d: Decidable) -> ReSet {
        ReSet { index: d.semi_decider(), decidable: Some(d) }
    }

    /// Stage `budget` of the dovetailed enumeration: inputs `0..=budget`,
    /// each run for `budget` steps.
    pub fn enumerate(&self, budget: u64) -> BTreeSet<BigUint> {
        let mut out = BTreeSet::new();
        for x in 0..=budget {
            let x = BigUint::from(x);
            if self.index.apply(std::slice::from_ref(&x), Fuel(budget)).halted() {
                out.insert(x);
            }
        }
        out
    }

    /// Members in order of discovery: stage `b` runs inputs `0..=b` for `b`
    /// steps each, for `b = 0..=budget`.
    pub fn enumerate_ordered(&self, budget: u64) -> Vec<BigUint> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for b in 0..=budget {
            for x in 0..=b {
                let x = BigUint::from(x);
                if !seen.contains(&x) && self.index.apply(std::slice::from_ref(&x), Fuel(b)).halted() {
                    seen.insert(x.clone());
                    out.push(x);
                }
            }
        }
        out
    }

    /// Exact membership when a descriptor exists; otherwise `Some(true)` if
    /// `φ_index(x)` halts within `fuel`, `None` if it has not.
    pub fn semi_contains(&self, x: &BigUint, fuel: Fuel) -> Option<bool> {
        if let Some(d) = &self.decidable {
            return Some(d.contains(x));
        }
        self.index.apply(std::slice::from_ref(x), fuel).halted().then_some(true)
    }

    pub fn is_empty_descriptor(&self) -> bool {
        matches!(self.decidable, Some(Decidable::Empty))
            || matches!(&self.decidable, Some(Decidable::Finite { members }) if members.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;

    #[test]
    fn enumerations() {
        let all = ReSet::from_index(Index::builtin(builtin::CONST0));
        let st = all.enumerate(50);
        assert!(!st.is_empty());
        assert!(st.iter().enumerate().all(|(k, x)| *x == BigUint::from(k)));
        let none = ReSet::from_index(Index::builtin(builtin::DIVERGE));
        assert!(none.enumerate(100_000).is_empty());
        let evens = ReSet::from_index(Index::builtin(builtin::HALT_IF_EVEN));
        let st = evens.enumerate(10_000);
        assert!(st.iter().all(|x| (x % 2u32).to_u32() == Some(0)));
        assert!(st.contains(&BigUint::from(0u32)) && st.contains(&BigUint::from(2u32)));
        for b in [10, 20, 40] {
            assert!(evens.enumerate(b).is_subset(&evens.enumerate(b + 1)));
        }
    }

    #[test]
    fn descriptors_agree_with_programs() {
        let ds = vec![
            Decidable::Empty,
            Decidable::All,
            Decidable::residues(4, &[1, 2]),
            Decidable::finite([0, 3, 17]),
            Decidable::Below { bound: 9u32.into() },
            Decidable::union(vec![Decidable::finite([5]), Decidable::residues(3, &[0])]),
            Decidable::residues(5, &[0]).complement(),
        ];
        for d in ds {
            let dec = d.decider();
            let semi = ReSet::from_index(d.semi_decider());
            for x in 0u32..40 {
                let x = BigUint::from(x);
                let want = d.contains(&x);
                let got = dec.apply(std::slice::from_ref(&x), Fuel(10_000));
                assert_eq!(got.value().cloned(), Some(BigUint::from(want as u32)), "{d:?} at {x}");
                let h = semi.index.apply(std::slice::from_ref(&x), Fuel(10_000)).halted();
                assert_eq!(h, want);
            }
        }
    }
}
