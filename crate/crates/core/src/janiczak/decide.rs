use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::axioms::{recognize_atom, E};
use super::boolcomb::{BoolComb, MAX_ATOMS};
use super::eval::{eval_over, required_bound};
use super::profile::SizeProfile;
use crate::error::{Error, Result};
use crate::logic::syntax::Formula;

/// Work limit for a single normal-form computation.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Metered normal form over `rel`; returns the combination and the steps used.
pub fn normal_form_over(s: &Formula, rel: &str, budget: u64) -> Result<(BoolComb, u64)> {
    if !s.is_sentence() {
        return Err(Error::Input(format!("not a sentence: {s}")));
    }
    let mut used = 0;
    let nf = nf(s, rel, budget, &mut used)?;
    Ok((nf, used))
}

fn nf(s: &Formula, rel: &str, budget: u64, used: &mut u64) -> Result<BoolComb> {
    *used += 1;
    match s {
        Formula::True => Ok(BoolComb::constant(true)),
        Formula::False => Ok(BoolComb::constant(false)),
        Formula::Not(g) => Ok(nf(g, rel, budget, used)?.not()),
        Formula::And(a, b) => nf(a, rel, budget, used)?.and(&nf(b, rel, budget, used)?),
        Formula::Or(a, b) => nf(a, rel, budget, used)?.or(&nf(b, rel, budget, used)?),
        Formula::Implies(a, b) => nf(a, rel, budget, used)?.implies(&nf(b, rel, budget, used)?),
        Formula::Rel(r, args) => {
            Err(Error::Input(format!("symbol {r}/{} outside the language {{{rel}/2}}", args.len())))
        }
        Formula::Eq(..) => Err(Error::Input(format!("not a sentence: {s}"))),
        Formula::Exists(..) | Formula::Forall(..) => {
            if let Some((r, n)) = recognize_atom(s) {
                if r == rel {
                    return Ok(BoolComb::atom(n));
                }
            }
            let bound = required_bound(s.rank());
            if bound > MAX_ATOMS {
                return Err(Error::Resource(format!("profile sweep over {bound} sizes exceeds {MAX_ATOMS}")));
            }
            let atoms: Vec<usize> = (0..bound).collect();
            let mut failure = None;
            let comb = BoolComb::from_fn(&atoms, |val| {
                if failure.is_some() {
                    return false;
                }
                let p = SizeProfile::from_atoms(bound, (0..bound).filter(|&i| val(i))).expect("in range");
                match eval_over(s, rel, &p, budget.saturating_sub(*used)) {
                    Ok((v, steps)) => {
                        *used += steps;
                        v
                    }
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            });
            match failure {
                Some(e) => Err(e),
                None => comb,
            }
        }
    }
}

/// A sentence over `{E}` as a boolean combination of the `A_s`, equivalent over J.
pub fn normal_form(s: &Formula) -> Result<BoolComb> {
    Ok(normal_form_over(s, E, DEFAULT_BUDGET)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum Decision {
    Provable,
    NotProvable { countermodel: SizeProfile },
    Inconsistent,
}

impl Decision {
    pub fn is_provable(&self) -> bool {
        matches!(self, Decision::Provable)
    }
}

/// Truth values forced on individual atoms by literal axioms.
pub type Literals<'a> = &'a dyn Fn(usize) -> Result<Option<bool>>;

/// Decides `J + context + literals ⊢ target` for a target already in normal form.
pub fn decide_comb(context: &[BoolComb], literals: Literals, target: &BoolComb) -> Result<Decision> {
    let mut atoms: BTreeSet<usize> = target.atoms.iter().copied().collect();
    for c in context {
        atoms.extend(&c.atoms);
    }
    let atoms: Vec<usize> = atoms.into_iter().collect();
    if atoms.len() > MAX_ATOMS {
        return Err(Error::Resource(format!("decision over {} atoms exceeds {MAX_ATOMS}", atoms.len())));
    }
    let forced: Vec<Option<bool>> = atoms.iter().map(|&a| literals(a)).collect::<Result<_>>()?;
    let mut consistent = false;
    for bits in 0..1u64 << atoms.len() {
        let val = |a: usize| atoms.iter().position(|&b| b == a).is_some_and(|i| bits >> i & 1 == 1);
        let fits = atoms.iter().zip(&forced).all(|(&a, f)| f.is_none_or(|b| b == val(a)));
        if !fits || !context.iter().all(|c| c.eval(&val)) {
            continue;
        }
        consistent = true;
        if !target.eval(&val) {
            let bound = atoms.last().map_or(0, |m| m + 1);
            let countermodel = SizeProfile::from_atoms(bound, atoms.iter().copied().filter(|&a| val(a)))?;
            return Ok(Decision::NotProvable { countermodel });
        }
    }
    if !consistent {
        return Ok(Decision::Inconsistent);
    }
    Ok(Decision::Provable)
}

/// Decides `J + context ⊢ s` for a sentence over `{E}`.
pub fn decide(context: &[BoolComb], s: &Formula) -> Result<Decision> {
    let target = normal_form(s)?;
    decide_comb(context, &|_| Ok(None), &target)
}

/// Whether `J + context` is consistent.
pub fn consistent(context: &[BoolComb], literals: Literals) -> Result<bool> {
    Ok(decide_comb(context, literals, &BoolComb::constant(false))? != Decision::Inconsistent)
}
