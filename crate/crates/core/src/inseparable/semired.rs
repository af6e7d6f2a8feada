use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::DisjointPair;
use crate::error::{Error, Result};
use crate::logic::{godel, oplus, ungodel, Formula, Theory, P};
use crate::recfun::{smn, Asm, Fuel, Index, PrimOp, ReSet};

/// A total map sending the left component into the provable sentences of
/// `theory` and the right component into its refutable sentences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiReduction {
    #[serde(rename = "fn")]
    pub func: Index,
    pub source: DisjointPair,
    pub target_p: ReSet,
    pub target_r: ReSet,
    pub theory: Theory,
}

fn nucleus(theory: &Theory, refute: bool) -> ReSet {
    let mut asm = Asm::new(2);
    let x = if refute {
        let nx = asm.reg();
        asm.prim(nx, PrimOp::Neg, &[1]);
        nx
    } else {
        1
    };
    let r = asm.reg();
    asm.prim(r, PrimOp::Provable, &[0, x]);
    let no = asm.label();
    asm.jump_if_zero(r, no);
    asm.halt(r);
    asm.bind(no);
    asm.diverge();
    let prog = Index::of(&asm.finish());
    ReSet::from_index(smn(&prog, &[theory.code()]))
}

/// `T_P`: halts exactly on codes of theorems of `theory`.
pub fn nucleus_p(theory: &Theory) -> ReSet {
    nucleus(theory, false)
}

/// `T_R`: halts exactly on codes of sentences refuted by `theory`.
pub fn nucleus_r(theory: &Theory) -> ReSet {
    nucleus(theory, true)
}

impl SemiReduction {
    pub fn new(func: Index, source: DisjointPair, theory: Theory) -> SemiReduction {
        SemiReduction { func, target_p: nucleus_p(&theory), target_r: nucleus_r(&theory), source, theory }
    }

    /// The sentence `fn(n)`.
    pub fn image(&self, n: &BigUint, fuel: Fuel) -> Result<Formula> {
        let code = self
            .func
            .apply(std::slice::from_ref(n), fuel)
            .value()
            .cloned()
            .ok_or_else(|| Error::OutOfFuel(format!("reduction at {n} with fuel {}", fuel.0)))?;
        ungodel(&code).ok_or_else(|| Error::Input(format!("reduction at {n} returned a non-sentence code")))
    }

    /// Decides `T ⊢ fn(n)` (left) or `T ⊢ ¬fn(n)` (right) with the theory's decider.
    pub fn lands(&self, n: &BigUint, right: bool, fuel: Fuel) -> Result<bool> {
        let s = self.image(n, fuel)?;
        let goal = if right { s.not() } else { s };
        self.theory.proves(&goal)
    }
}

/// `g(n) = (P → f₁(n)) ∧ (¬P → f₂(n))`, a semi-reduction into `U ⊕ V`.
pub fn oplus_semi_reduction(f1: &SemiReduction, f2: &SemiReduction) -> Result<SemiReduction> {
    if f1.source.left != f2.source.left || f1.source.right != f2.source.right {
        return Err(Error::Input("the two reductions start from different pairs".into()));
    }
    let t = oplus(&f1.theory, &f2.theory)?;
    let mut asm = Asm::new(1);
    let r1 = asm.constant(f1.func.index.clone());
    let a = asm.reg();
    asm.call(a, r1, &[0]);
    let r2 = asm.constant(f2.func.index.clone());
    let b = asm.reg();
    asm.call(b, r2, &[0]);
    let p = asm.constant(godel(&crate::logic::prop(P)));
    let np = asm.reg();
    asm.prim(np, PrimOp::Neg, &[p]);
    let x = asm.reg();
    asm.prim(x, PrimOp::Imp, &[p, a]);
    let y = asm.reg();
    asm.prim(y, PrimOp::Imp, &[np, b]);
    let g = asm.reg();
    asm.prim(g, PrimOp::And, &[x, y]);
    asm.halt(g);
    Ok(SemiReduction::new(Index::of(&asm.finish()), f1.source.clone(), t))
}

#[cfg(test)]
mod tests {
    use super::super::Origin;
    use super::*;
    use crate::janiczak::{atom_map, axiom_a, axiom_a_over};
    use crate::logic::AtomSet;
    use crate::recfun::Decidable;

    fn parity_pair() -> DisjointPair {
        DisjointPair {
            name: "parity".into(),
            left: ReSet::from_decidable(Decidable::residues(2, &[0])),
            right: ReSet::from_decidable(Decidable::residues(2, &[1])),
            witness: None,
            origin: Origin::Diagonal,
        }
    }

    fn reductions() -> (SemiReduction, SemiReduction) {
        let even = || AtomSet::Decidable { set: Decidable::residues(2, &[0]) };
        let odd = || AtomSet::Decidable { set: Decidable::residues(2, &[1]) };
        let u = Theory::janiczak("U", "E", even(), odd(), vec![]);
        let v = Theory::janiczak("V", "F", odd(), even(), vec![]);
        // f2(n) = ¬A'_n
        let mut asm = Asm::new(1);
        let m = asm.constant(atom_map("F").index);
        let a = asm.reg();
        asm.call(a, m, &[0]);
        let out = asm.reg();
        asm.prim(out, PrimOp::Neg, &[a]);
        asm.halt(out);
        let f2 = Index::of(&asm.finish());
        (SemiReduction::new(atom_map("E"), parity_pair(), u), SemiReduction::new(f2, parity_pair(), v))
    }

    #[test]
    fn oplus_reduction_transports_both_sides() {
        let (f1, f2) = reductions();
        let g = oplus_semi_reduction(&f1, &f2).unwrap();
        for n in 0..6u32 {
            let n = BigUint::from(n);
            let right = &n % 2u32 == BigUint::from(1u32);
            assert!(f1.lands(&n, right, Fuel(100_000)).unwrap());
            assert!(f2.lands(&n, right, Fuel(100_000)).unwrap());
            assert!(g.lands(&n, right, Fuel(100_000)).unwrap(), "n = {n}");
            assert!(!g.lands(&n, !right, Fuel(100_000)).unwrap());
        }
        let s = g.image(&BigUint::from(3u32), Fuel(100_000)).unwrap();
        let expected = crate::logic::prop(P)
            .implies(axiom_a(3))
            .and(crate::logic::prop(P).not().implies(axiom_a_over("F", 3).not()));
        assert_eq!(s, expected);
    }

    #[test]
    fn nuclei_halt_on_theorems() {
        let (f1, _) = reductions();
        let a0 = godel(&axiom_a(0));
        assert!(f1.target_p.semi_contains(&a0, Fuel(1_000_000)) == Some(true));
        assert!(f1.target_r.semi_contains(&godel(&axiom_a(1)), Fuel(1_000_000)) == Some(true));
        assert!(f1.target_p.semi_contains(&godel(&axiom_a(1)), Fuel(1_000_000)).is_none());
    }

    #[test]
    fn clashing_signatures_are_rejected() {
        let (f1, _) = reductions();
        assert!(matches!(oplus_semi_reduction(&f1, &f1), Err(Error::Input(_))));
    }
}
