//! Effectively inseparable pairs of RE sets, their witnesses, pushforwards
//! along strictly increasing recursive maps and semi-reductions into `⊕`
//! theories.

mod kpair;
mod pushforward;
mod semired;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recfun::{Decidable, Fuel, Index, ReSet};

pub use kpair::{k_pair, k_program, search_body};
pub use pushforward::{
    pull_agrees_on, pull_index, pushforward, pushforward_on, pushforward_with_values, transported_witness,
    MONOTONE_PREFIX,
};
pub use semired::{nucleus_p, nucleus_r, oplus_semi_reduction, SemiReduction};

/// How a pair was obtained; used to certify membership of witness values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    /// `({x : φ_x(x) = 0}, {x : φ_x(x) = 1})`.
    Diagonal,
    /// Images of `base` under the strictly increasing `f`.
    Pushforward { base: Box<DisjointPair>, f: Index },
}

/// A disjoint pair of RE sets with an optional binary witness function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointPair {
    pub name: String,
    pub left: ReSet,
    pub right: ReSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Index>,
    pub origin: Origin,
}

/// Which component a number was shown to belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A witness value together with the point of the underlying diagonal pair
/// it was transported from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traced {
    pub value: BigUint,
    pub source: BigUint,
}

impl Traced {
    /// The component `value` lies in, when `φ_source(source)` halts with 0 or 1
    /// within `fuel`.
    pub fn side(&self, fuel: Fuel) -> Option<Side> {
        let n = &self.source;
        match Index::new(n.clone()).apply(std::slice::from_ref(n), fuel).value() {
            Some(v) if *v == BigUint::from(0u32) => Some(Side::Left),
            Some(v) if *v == BigUint::from(1u32) => Some(Side::Right),
            _ => None,
        }
    }
}

impl DisjointPair {
    /// Elements enumerated into both components by stage `budget`.
    pub fn overlap_at(&self, budget: u64) -> Vec<BigUint> {
        let l = self.left.enumerate(budget);
        let r = self.right.enumerate(budget);
        l.intersection(&r).cloned().collect()
    }

    /// Applies the witness to `(i, j)` by mirroring its construction, keeping
    /// the diagonal point the value was transported from.
    pub fn trace(&self, i: &Index, j: &Index, fuel: Fuel) -> Result<Traced> {
        match &self.origin {
            Origin::Diagonal => {
                let value = ei_witness(self, i, j, fuel)?;
                Ok(Traced { source: value.clone(), value })
            }
            Origin::Pushforward { base, f } => {
                let inner = base.trace(&pull_index(f, i), &pull_index(f, j), fuel)?;
                let value = f
                    .apply(std::slice::from_ref(&inner.value), fuel)
                    .value()
                    .cloned()
                    .ok_or_else(|| Error::OutOfFuel(format!("F at the transported witness, fuel {}", fuel.0)))?;
                Ok(Traced { value, source: inner.source })
            }
        }
    }
}

/// `f(i, j)` for the pair's witness `f`.
pub fn ei_witness(pair: &DisjointPair, i: &Index, j: &Index, fuel: Fuel) -> Result<BigUint> {
    let w = pair.witness.as_ref().ok_or_else(|| Error::Input(format!("pair {} carries no witness", pair.name)))?;
    w.apply(&[i.index.clone(), j.index.clone()], fuel)
        .value()
        .cloned()
        .ok_or_else(|| Error::OutOfFuel(format!("witness of {} at ({i}, {j}) with fuel {}", pair.name, fuel.0)))
}

/// Result of testing the witness contract against decidable `W_i`, `W_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ContractCheck {
    /// The value lies outside both sets.
    Avoided {
        #[serde(with = "crate::bigdec")]
        value: BigUint,
    },
    /// The value shows that a hypothesis of the contract fails.
    PreconditionRefuted {
        #[serde(with = "crate::bigdec")]
        value: BigUint,
        reason: String,
    },
    /// The value lies in a set while the hypotheses could not be refuted.
    Violated {
        #[serde(with = "crate::bigdec")]
        value: BigUint,
        reason: String,
    },
    /// The membership needed to refute a hypothesis was not settled within fuel.
    Inconclusive {
        #[serde(with = "crate::bigdec")]
        value: BigUint,
    },
}

impl ContractCheck {
    pub fn is_failure(&self) -> bool {
        matches!(self, ContractCheck::Violated { .. })
    }
}

/// Checks `f(i, j) ∉ W_i ∪ W_j` exactly for decidable `W_i`, `W_j`.
///
/// When the value lands in one of the sets, the traced component membership
/// exhibits the failed hypothesis: a right element outside `W_j` or a left
/// element outside `W_i`.
pub fn check_contract(pair: &DisjointPair, wi: &Decidable, wj: &Decidable, fuel: Fuel) -> Result<ContractCheck> {
    let i = wi.semi_decider();
    let j = wj.semi_decider();
    let t = pair.trace(&i, &j, fuel)?;
    let (in_i, in_j) = (wi.contains(&t.value), wj.contains(&t.value));
    let side = if in_i != in_j { t.side(fuel) } else { None };
    let value = t.value;
    Ok(match (in_i, in_j, side) {
        (false, false, _) => ContractCheck::Avoided { value },
        (true, true, _) => ContractCheck::PreconditionRefuted { value, reason: "W_i and W_j intersect".into() },
        (true, false, Some(Side::Right)) => {
            ContractCheck::PreconditionRefuted { value, reason: "right component not contained in W_j".into() }
        }
        (false, true, Some(Side::Left)) => {
            ContractCheck::PreconditionRefuted { value, reason: "left component not contained in W_i".into() }
        }
        (_, _, Some(side)) => {
            ContractCheck::Violated { value, reason: format!("value in the {side:?} component and inside one set") }
        }
        (_, _, None) => ContractCheck::Inconclusive { value },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_pair_contract_on_residue_splits() {
        let pair = k_pair();
        let cases = [
            (Decidable::residues(2, &[0]), Decidable::residues(2, &[1])),
            (Decidable::residues(3, &[0, 1]), Decidable::residues(3, &[2])),
            (Decidable::Empty, Decidable::Empty),
            (Decidable::finite([0, 5]), Decidable::finite([1, 7])),
        ];
        for (wi, wj) in cases {
            let c = check_contract(&pair, &wi, &wj, Fuel(100_000)).unwrap();
            assert!(!matches!(c, ContractCheck::Violated { .. } | ContractCheck::Inconclusive { .. }), "{c:?}");
        }
    }

    #[test]
    fn missing_witness_is_input_error() {
        let mut pair = k_pair();
        pair.witness = None;
        let i = Index::builtin(0);
        assert!(matches!(ei_witness(&pair, &i, &i, Fuel(10)), Err(Error::Input(_))));
    }
}
