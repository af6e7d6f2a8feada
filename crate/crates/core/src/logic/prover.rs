//! Bounded analytic tableau prover. Sound, deliberately incomplete: it is a
//! fallback for theories without a decider.

use std::collections::HashMap;

use super::syntax::Formula;

/// Negation normal form: negations only on atoms.
fn nnf(f: &Formula, positive: bool) -> Formula {
    use Formula::*;
    match (f, positive) {
        (True, p) | (False, p) if !p => {
            if matches!(f, True) {
                False
            } else {
                True
            }
        }
        (Not(g), p) => nnf(g, !p),
        (And(a, b), true) => nnf(a, true).and(nnf(b, true)),
        (And(a, b), false) => nnf(a, false).or(nnf(b, false)),
        (Or(a, b), true) => nnf(a, true).or(nnf(b, true)),
        (Or(a, b), false) => nnf(a, false).and(nnf(b, false)),
        (Implies(a, b), true) => nnf(a, false).or(nnf(b, true)),
        (Implies(a, b), false) => nnf(a, true).and(nnf(b, false)),
        (Exists(v, g), true) => Formula::exists(v, nnf(g, true)),
        (Exists(v, g), false) => Formula::forall(v, nnf(g, false)),
        (Forall(v, g), true) => Formula::forall(v, nnf(g, true)),
        (Forall(v, g), false) => Formula::exists(v, nnf(g, false)),
        (atom, true) => atom.clone(),
        (atom, false) => atom.clone().not(),
    }
}

struct Search {
    steps: u64,
    budget: u64,
    next_const: usize,
    gamma_rounds: usize,
}

fn instantiate(body: &Formula, v: &str, c: &str) -> Formula {
    body.rename_free(&HashMap::from([(v.to_string(), c.to_string())]))
}

fn complementary(a: &Formula, b: &Formula) -> bool {
    match (a, b) {
        (Formula::Not(x), y) | (y, Formula::Not(x)) => {
            **x == *y || matches!((&**x, y), (Formula::Eq(p, q), Formula::Eq(r, s)) if p == s && q == r)
        }
        _ => false,
    }
}

impl Search {
    /// Whether every branch extending `lits` with `todo` closes.
    fn closes(
        &mut self,
        mut lits: Vec<Formula>,
        mut todo: Vec<Formula>,
        mut gammas: Vec<(Formula, usize)>,
        consts: Vec<String>,
    ) -> Option<bool> {
        let mut consts = consts;
        loop {
            self.steps += 1;
            if self.steps > self.budget {
                return None;
            }
            let Some(f) = todo.pop() else {
                // instantiate universals over all constants, a bounded number of times
                let mut progressed = false;
                if consts.is_empty() {
                    consts.push(format!("#c{}", self.next_const));
                    self.next_const += 1;
                }
                for (g, rounds) in gammas.iter_mut() {
                    if *rounds < self.gamma_rounds {
                        *rounds += 1;
                        if let Formula::Forall(v, body) = g {
                            for c in &consts {
                                todo.push(instantiate(body, v, c));
                            }
                            progressed = true;
                        }
                    }
                }
                if !progressed {
                    return Some(false);
                }
                continue;
            };
            match f {
                Formula::True => {}
                Formula::False => return Some(true),
                Formula::And(a, b) => {
                    todo.push(*a);
                    todo.push(*b);
                }
                Formula::Or(a, b) => {
                    let mut left = todo.clone();
                    left.push(*a);
                    if !self.closes(lits.clone(), left, gammas.clone(), consts.clone())? {
                        return Some(false);
                    }
                    todo.push(*b);
                }
                Formula::Exists(v, body) => {
                    let c = format!("#c{}", self.next_const);
                    self.next_const += 1;
                    consts.push(c.clone());
                    todo.push(instantiate(&body, &v, &c));
                }
                g @ Formula::Forall(..) => {
                    if !gammas.iter().any(|(h, _)| *h == g) {
                        gammas.push((g, 0));
                    }
                }
                Formula::Not(a) if matches!(&*a, Formula::Eq(x, y) if x == y) => return Some(true),
                lit => {
                    if lits.iter().any(|l| complementary(l, &lit)) {
                        return Some(true);
                    }
                    lits.push(lit);
                }
            }
        }
    }
}

/// Tries to show `premises ⊢ goal`; returns the work spent on success.
pub fn prove(premises: &[Formula], goal: &Formula, budget: u64) -> Option<u64> {
    let mut todo: Vec<Formula> = premises.iter().map(|p| nnf(p, true)).collect();
    todo.push(nnf(goal, false));
    let mut spent = 0;
    for rounds in 1..=3 {
        let mut s = Search { steps: 0, budget: budget.saturating_sub(spent), next_const: 0, gamma_rounds: rounds };
        let r = s.closes(vec![], todo.clone(), vec![], vec![]);
        spent += s.steps;
        match r {
            Some(true) => return Some(spent),
            None => return None,
            Some(false) => {}
        }
    }
    None
}
