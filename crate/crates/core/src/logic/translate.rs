//! One-dimensional, parameter-free, one-piece translations.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::enumerate::{var, FormulaEnumerator};
use super::syntax::{Formula, Signature};
use crate::error::{Error, Result};

/// Domain formula over `x0`, a formula over `x0..x{k-1}` for each source
/// relation of arity `k`, and an equality formula over `x0, x1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Translation {
    pub domain: Formula,
    pub relations: BTreeMap<String, Formula>,
    pub equality: Formula,
}

fn within(f: &Formula, k: usize) -> bool {
    f.free_vars().iter().all(|v| (0..k).any(|i| *v == var(i)))
}

fn instantiate(f: &Formula, args: &[String]) -> Formula {
    let map: HashMap<String, String> = args.iter().enumerate().map(|(i, a)| (var(i), a.clone())).collect();
    f.rename_free(&map)
}

impl Translation {
    /// The identity translation of `sig` into itself.
    pub fn identity(sig: &Signature) -> Translation {
        let relations = sig
            .relations
            .iter()
            .map(|(r, &a)| (r.clone(), Formula::Rel(r.clone(), (0..a).map(var).collect())))
            .collect();
        Translation { domain: Formula::True, relations, equality: Formula::Eq(var(0), var(1)) }
    }

    /// Checks the translation maps `src` into `dst` with the designated variables.
    pub fn check(&self, src: &Signature, dst: &Signature) -> Result<()> {
        let bad = |what: &str| Err(Error::Input(format!("translation: {what}")));
        if !within(&self.domain, 1) || !within(&self.equality, 2) {
            return bad("domain must use only x0 and equality only x0, x1");
        }
        dst.check(&self.domain)?;
        dst.check(&self.equality)?;
        for (r, &a) in &src.relations {
            match self.relations.get(r) {
                None => return bad(&format!("no formula for {r}")),
                Some(f) if !within(f, a) => return bad(&format!("formula for {r} has extra free variables")),
                Some(f) => dst.check(f)?,
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.domain.size() + self.relations.values().map(Formula::size).sum::<usize>() + self.equality.size()
    }
}

/// `f^I`: atoms replaced by their defining formulas, quantifiers relativized
/// to the domain. Free variables of `f` are left unrestricted.
pub fn apply_translation(f: &Formula, t: &Translation) -> Result<Formula> {
    Ok(match f {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Rel(r, args) => {
            let def = t.relations.get(r).ok_or_else(|| Error::Input(format!("translation lacks symbol {r}")))?;
            instantiate(def, args)
        }
        Formula::Eq(a, b) => instantiate(&t.equality, &[a.clone(), b.clone()]),
        Formula::Not(g) => apply_translation(g, t)?.not(),
        Formula::And(a, b) => apply_translation(a, t)?.and(apply_translation(b, t)?),
        Formula::Or(a, b) => apply_translation(a, t)?.or(apply_translation(b, t)?),
        Formula::Implies(a, b) => apply_translation(a, t)?.implies(apply_translation(b, t)?),
        Formula::Exists(v, g) => {
            let dom = instantiate(&t.domain, std::slice::from_ref(v));
            Formula::exists(v, dom.and(apply_translation(g, t)?))
        }
        Formula::Forall(v, g) => {
            let dom = instantiate(&t.domain, std::slice::from_ref(v));
            Formula::forall(v, dom.implies(apply_translation(g, t)?))
        }
    })
}

/// Enumerates all translations of `src` into `dst`.
///
/// Order: total size; then the tuple of component sizes (domain, relations in
/// signature order, equality) lexicographically; then the component formulas
/// in enumeration order with the last component varying fastest.
pub struct TranslationEnumerator {
    arities: Vec<(Option<String>, usize)>,
    formulas: FormulaEnumerator,
    total: usize,
    shapes: Vec<Vec<usize>>,
    shape: usize,
    lists: Vec<Rc<Vec<Formula>>>,
    counter: Vec<usize>,
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl TranslationEnumerator {
    pub fn new(src: &Signature, dst: &Signature) -> TranslationEnumerator {
        let mut arities = vec![(None, 1)];
        arities.extend(src.relations.iter().map(|(r, &a)| (Some(r.clone()), a)));
        arities.push((None, 2));
        let parts = arities.len();
        let mut e = TranslationEnumerator {
            arities,
            formulas: FormulaEnumerator::new(dst.clone()),
            total: parts - 1,
            shapes: vec![],
            shape: 0,
            lists: vec![],
            counter: vec![],
        };
        e.next_total();
        e
    }

    fn next_total(&mut self) {
        self.total += 1;
        self.shapes = compositions(self.total, self.arities.len());
        self.shape = 0;
        self.load_shape();
    }

    fn load_shape(&mut self) {
        let sizes = self.shapes[self.shape].clone();
        self.lists = sizes.iter().zip(&self.arities).map(|(&s, &(_, a))| self.formulas.of_size(s, a)).collect();
        self.counter = vec![0; self.lists.len()];
    }

    fn advance(&mut self) {
        for k in (0..self.counter.len()).rev() {
            self.counter[k] += 1;
            if self.counter[k] < self.lists[k].len() {
                return;
            }
            self.counter[k] = 0;
        }
        self.shape += 1;
        if self.shape < self.shapes.len() {
            self.load_shape();
        } else {
            self.next_total();
        }
    }
}

impl Iterator for TranslationEnumerator {
    type Item = Translation;

    fn next(&mut self) -> Option<Translation> {
        while self.lists.iter().any(|l| l.is_empty()) {
            self.counter.iter_mut().for_each(|c| *c = 0);
            self.shape += 1;
            if self.shape < self.shapes.len() {
                self.load_shape();
            } else {
                self.next_total();
            }
        }
        let pick: Vec<Formula> = self.lists.iter().zip(&self.counter).map(|(l, &c)| l[c].clone()).collect();
        let n = pick.len();
        let relations = self.arities[1..n - 1]
            .iter()
            .zip(&pick[1..n - 1])
            .map(|((r, _), f)| (r.clone().expect("named"), f.clone()))
            .collect();
        let t = Translation { domain: pick[0].clone(), relations, equality: pick[n - 1].clone() };
        self.advance();
        Some(t)
    }
}

/// The first `count` translations of `src` into `dst`.
pub fn enumerate_translations(src: &Signature, dst: &Signature, count: usize) -> Vec<Translation> {
    TranslationEnumerator::new(src, dst).take(count).collect()
}

/// Position of `t` in the enumeration, searching at most `limit` entries.
pub fn translation_position(t: &Translation, src: &Signature, dst: &Signature, limit: usize) -> Option<usize> {
    TranslationEnumerator::new(src, dst).take(limit).position(|u| u == *t)
}
