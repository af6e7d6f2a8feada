//! `V = J + {A_n : n ∈ Y} + {¬A_n : n ∈ Z}` for an EI pair `(Y, Z)` inside
//! `X`, with the witness `h(i, j) = f(t(g(i), g(j)))` where `f : n ↦ ⌜A_n⌝`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::xbuild::XBuild;
use crate::error::{Error, Result};
use crate::inseparable::{k_pair, pushforward_with_values, transported_witness, DisjointPair};
use crate::janiczak::{atom_map, consistent, normal_form_over, BoolComb};
use crate::logic::{AtomSet, Theory};
use crate::recfun::Index;

/// Relation symbol of `V`, kept apart from the subject's `E`.
pub const E_PRIME: &str = "E'";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VBuild {
    pub theory: Theory,
    /// `(Y, Z)`: the diagonal pair pushed along `F`.
    pub pair: DisjointPair,
    /// `h`, an EI witness for `(V_P, V_R)`.
    pub witness: Index,
    pub f_prefix: Vec<u64>,
}

/// Builds `V` over `rel` from an index of `F` whose values on `0..` are
/// `f_prefix`.
pub fn build_v_from(f: &Index, f_prefix: Vec<u64>, rel: &str) -> Result<VBuild> {
    if f_prefix.is_empty() {
        return Err(Error::Input("empty prefix of F".into()));
    }
    let values: Vec<BigUint> = f_prefix.iter().map(|&v| BigUint::from(v)).collect();
    let pair = pushforward_with_values(&k_pair(), f, &values)?;
    let t = pair.witness.clone().expect("the diagonal pair carries a witness");
    let witness = transported_witness(&atom_map(rel), &t);
    let theory = Theory::janiczak(
        "V",
        rel,
        AtomSet::Diagonal { value: 0, f_prefix: f_prefix.clone() },
        AtomSet::Diagonal { value: 1, f_prefix: f_prefix.clone() },
        vec![],
    );
    Ok(VBuild { theory, pair, witness, f_prefix })
}

/// `V` over `E'` for the set `X` of a construction, using its computed prefix.
pub fn build_v(x: &mut XBuild) -> Result<VBuild> {
    let prefix = x.x_prefix(x.config.depth)?;
    build_v_from(&x.f_index(), prefix, E_PRIME)
}

impl VBuild {
    /// Whether the first `count` axioms, in normal form, are jointly consistent.
    pub fn axioms_consistent(&self, count: usize, budget: u64) -> Result<bool> {
        let rel = &self.relation();
        let context: Vec<BoolComb> = self
            .theory
            .axioms_prefix(count)
            .iter()
            .map(|a| Ok(normal_form_over(a, rel, budget)?.0))
            .collect::<Result<_>>()?;
        consistent(&context, &|_| Ok(None))
    }

    fn relation(&self) -> String {
        match &self.theory.axioms {
            crate::logic::Axioms::Janiczak(spec) => spec.relation.clone(),
            _ => unreachable!("V is a Janiczak theory"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::janiczak::axiom_a_over;
    use crate::logic::Verdict;
    use crate::recfun::{Asm, PrimOp};
    use num_bigint::BigUint;

    fn doubling() -> Index {
        let mut asm = Asm::new(1);
        let r = asm.reg();
        asm.prim(r, PrimOp::Add, &[0, 0]);
        asm.halt(r);
        Index::of(&asm.finish())
    }

    #[test]
    fn literals_follow_the_diagonal() {
        let v = build_v_from(&doubling(), vec![0, 2, 4], E_PRIME).unwrap();
        // φ_0(0) = 0, φ_1(1) = 1, φ_2(2) = 2
        assert!(v.theory.proves(&axiom_a_over(E_PRIME, 0)).unwrap());
        assert!(v.theory.proves(&axiom_a_over(E_PRIME, 2).not()).unwrap());
        for s in [1, 3, 4] {
            let (verdict, _) = v.theory.decide(&axiom_a_over(E_PRIME, s), 1_000_000).unwrap();
            assert!(matches!(verdict, Verdict::NotProvable { .. }), "A'{s}");
        }
        assert!(v.theory.decide(&axiom_a_over(E_PRIME, 6), 1_000_000).is_err());
    }

    #[test]
    fn components_stay_inside_x() {
        let v = build_v_from(&doubling(), vec![0, 2, 4], E_PRIME).unwrap();
        for side in [&v.pair.left, &v.pair.right] {
            for y in side.enumerate(40) {
                assert_eq!(&y % 2u32, BigUint::from(0u32));
            }
        }
        assert!(v.axioms_consistent(8, 10_000_000).unwrap());
    }

    #[test]
    fn witness_is_the_transport_along_the_atom_map() {
        let v = build_v_from(&doubling(), vec![0, 2], E_PRIME).unwrap();
        let t = v.pair.witness.clone().unwrap();
        assert_eq!(v.witness, transported_witness(&atom_map(E_PRIME), &t));
    }
}
