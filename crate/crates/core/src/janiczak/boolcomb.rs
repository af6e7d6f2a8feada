use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::axioms::axiom_a_over;
use crate::error::{Error, Result};
use crate::logic::syntax::Formula;

/// Most atoms a boolean combination may mention.
pub const MAX_ATOMS: usize = 20;

/// A boolean combination of the `A_s`, kept as a DNF of full minterms over
/// exactly the atoms the function depends on. Minterms are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoolComb {
    pub atoms: Vec<usize>,
    pub minterms: Vec<Vec<bool>>,
}

fn check_width(atoms: &[usize]) -> Result<()> {
    if atoms.len() > MAX_ATOMS {
        return Err(Error::Resource(format!("boolean combination over {} atoms exceeds {MAX_ATOMS}", atoms.len())));
    }
    Ok(())
}

impl BoolComb {
    pub fn constant(b: bool) -> BoolComb {
        BoolComb { atoms: vec![], minterms: if b { vec![vec![]] } else { vec![] } }
    }

    pub fn atom(s: usize) -> BoolComb {
        BoolComb { atoms: vec![s], minterms: vec![vec![true]] }
    }

    pub fn literal(s: usize, positive: bool) -> BoolComb {
        BoolComb { atoms: vec![s], minterms: vec![vec![positive]] }
    }

    /// Tabulates `f` over `atoms` and drops atoms it does not depend on.
    pub fn from_fn(atoms: &[usize], mut f: impl FnMut(&dyn Fn(usize) -> bool) -> bool) -> Result<BoolComb> {
        let atoms: Vec<usize> = atoms.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        check_width(&atoms)?;
        let k = atoms.len();
        let table: Vec<bool> = (0..1u64 << k)
            .map(|bits| {
                let val = |s: usize| atoms.iter().position(|&a| a == s).is_some_and(|i| bits >> i & 1 == 1);
                f(&val)
            })
            .collect();
        let relevant: Vec<usize> =
            (0..k).filter(|&i| (0..1usize << k).any(|b| table[b] != table[b ^ (1 << i)])).collect();
        let minterms: Vec<Vec<bool>> = (0..1usize << k)
            .filter(|&b| table[b])
            .map(|b| relevant.iter().map(|&i| b >> i & 1 == 1).collect())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(BoolComb { atoms: relevant.iter().map(|&i| atoms[i]).collect(), minterms })
    }

    pub fn eval(&self, val: &dyn Fn(usize) -> bool) -> bool {
        let point: Vec<bool> = self.atoms.iter().map(|&a| val(a)).collect();
        self.minterms.binary_search(&point).is_ok()
    }

    pub fn is_true(&self) -> bool {
        self.atoms.is_empty() && !self.minterms.is_empty()
    }

    pub fn is_false(&self) -> bool {
        self.minterms.is_empty()
    }

    fn combine(&self, other: &BoolComb, op: impl Fn(bool, bool) -> bool) -> Result<BoolComb> {
        let mut atoms = self.atoms.clone();
        atoms.extend(&other.atoms);
        BoolComb::from_fn(&atoms, |v| op(self.eval(v), other.eval(v)))
    }

    pub fn and(&self, other: &BoolComb) -> Result<BoolComb> {
        self.combine(other, |a, b| a && b)
    }

    pub fn or(&self, other: &BoolComb) -> Result<BoolComb> {
        self.combine(other, |a, b| a || b)
    }

    pub fn implies(&self, other: &BoolComb) -> Result<BoolComb> {
        self.combine(other, |a, b| !a || b)
    }

    pub fn iff(&self, other: &BoolComb) -> Result<BoolComb> {
        self.combine(other, |a, b| a == b)
    }

    pub fn not(&self) -> BoolComb {
        BoolComb::from_fn(&self.atoms, |v| !self.eval(v)).expect("same width")
    }

    /// `sup {s+1 : A_s occurs}`, 0 when atom-free.
    pub fn t(&self) -> usize {
        self.atoms.iter().max().map_or(0, |m| m + 1)
    }

    /// The DNF as a sentence over `rel`.
    pub fn to_formula(&self, rel: &str) -> Formula {
        Formula::disj(self.minterms.iter().map(|m| {
            Formula::conj(self.atoms.iter().zip(m).map(|(&a, &pos)| {
                let f = axiom_a_over(rel, a);
                if pos {
                    f
                } else {
                    f.not()
                }
            }))
        }))
    }

    /// Human-readable DNF such as `A0 & ~A2 | A1`.
    pub fn describe(&self) -> String {
        if self.is_false() {
            return "false".into();
        }
        if self.is_true() {
            return "true".into();
        }
        self.minterms
            .iter()
            .map(|m| {
                self.atoms
                    .iter()
                    .zip(m)
                    .map(|(a, &pos)| format!("{}A{a}", if pos { "" } else { "~" }))
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_drops_irrelevant_atoms() {
        let a = BoolComb::atom(3);
        let taut = a.or(&a.not()).unwrap();
        assert!(taut.is_true());
        assert_eq!(taut.t(), 0);
        let f = BoolComb::atom(0).and(&BoolComb::atom(2).not()).unwrap();
        assert_eq!(f.atoms, vec![0, 2]);
        assert_eq!(f.minterms, vec![vec![true, false]]);
        assert_eq!(f.t(), 3);
        assert_eq!(f.describe(), "A0 & ~A2");
        let g = BoolComb::atom(1).or(&BoolComb::atom(0)).unwrap();
        assert_eq!(g.minterms, vec![vec![false, true], vec![true, false], vec![true, true]]);
    }
}
