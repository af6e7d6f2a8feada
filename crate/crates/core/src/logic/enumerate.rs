//! Size-ordered enumeration of formulas over a signature.
//!
//! Free variables are `x0..x{v-1}`; a binder introduced with `v` variables
//! in scope is named `x{v}`. Within a size the order is: constants, atoms
//! (relations in signature order, argument tuples lexicographic), equalities,
//! negations, conjunctions, disjunctions, implications (left size ascending),
//! existentials, universals.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;

use super::codes::godel;
use super::syntax::{Formula, Signature};
use crate::textcode;

/// Names the canonical orders of sentences, translations and theorem streams;
/// any change to them changes results that depend on "the least" element.
pub const ORDER_TAG: &str = "size-canonical/v1";

pub fn var(k: usize) -> String {
    format!("x{k}")
}

pub struct FormulaEnumerator {
    sig: Signature,
    cache: HashMap<(usize, usize), Rc<Vec<Formula>>>,
}

fn tuples(nvars: usize, len: usize) -> Vec<Vec<String>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..nvars).map(move |v| {
                    let mut t = t.clone();
                    t.push(var(v));
                    t
                })
            })
            .collect();
    }
    out
}

impl FormulaEnumerator {
    pub fn new(sig: Signature) -> FormulaEnumerator {
        FormulaEnumerator { sig, cache: HashMap::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// All formulas of exactly `size` nodes with free variables among `x0..x{nvars-1}`.
    pub fn of_size(&mut self, size: usize, nvars: usize) -> Rc<Vec<Formula>> {
        if let Some(v) = self.cache.get(&(size, nvars)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(Formula::True);
            out.push(Formula::False);
            for (r, &a) in &self.sig.relations {
                for t in tuples(nvars, a) {
                    out.push(Formula::Rel(r.clone(), t));
                }
            }
            for t in tuples(nvars, 2) {
                out.push(Formula::Eq(t[0].clone(), t[1].clone()));
            }
        } else if size > 1 {
            for f in self.of_size(size - 1, nvars).iter() {
                out.push(f.clone().not());
            }
            for op in 0..3 {
                for left in 1..size - 1 {
                    let ls = self.of_size(left, nvars);
                    let rs = self.of_size(size - 1 - left, nvars);
                    for a in ls.iter() {
                        for b in rs.iter() {
                            let (a, b) = (a.clone(), b.clone());
                            out.push(match op {
                                0 => a.and(b),
                                1 => a.or(b),
                                _ => a.implies(b),
                            });
                        }
                    }
                }
            }
            let body = self.of_size(size - 1, nvars + 1);
            let v = var(nvars);
            for f in body.iter() {
                out.push(Formula::exists(&v, f.clone()));
            }
            for f in body.iter() {
                out.push(Formula::forall(&v, f.clone()));
            }
        }
        let out = Rc::new(out);
        self.cache.insert((size, nvars), out.clone());
        out
    }

    /// Sentences in canonical order, ascending size. Unbounded.
    pub fn sentences(mut self) -> impl Iterator<Item = Formula> {
        (1..).flat_map(move |n| {
            let level = self.of_size(n, 0);
            (0..level.len()).map(move |k| level[k].clone())
        })
    }
}

/// The first `count` sentences of the canonical enumeration over `sig`.
pub fn first_sentences(sig: &Signature, count: usize) -> Vec<Formula> {
    FormulaEnumerator::new(sig.clone()).sentences().take(count).collect()
}

/// Numbering of signatures used by the `sentence` machine primitive.
pub fn signature_code(sig: &Signature) -> BigUint {
    textcode::encode_str(&serde_json::to_string(sig).expect("serializable"))
}

type SentenceCursor = (Box<dyn Iterator<Item = Formula>>, Vec<BigUint>);

thread_local! {
    static SENTENCES: RefCell<HashMap<BigUint, SentenceCursor>> = RefCell::new(HashMap::new());
}

/// Code of the `k`-th sentence over the signature numbered `sig_code`.
pub fn sentence_at(sig_code: &BigUint, k: usize) -> Option<BigUint> {
    SENTENCES.with(|c| {
        let mut c = c.borrow_mut();
        if !c.contains_key(sig_code) {
            let sig: Signature = serde_json::from_str(&textcode::decode_str(sig_code)?).ok()?;
            if c.len() > 64 {
                c.clear();
            }
            c.insert(sig_code.clone(), (Box::new(FormulaEnumerator::new(sig).sentences()), vec![]));
        }
        let (it, seen) = c.get_mut(sig_code).expect("inserted");
        while seen.len() <= k {
            seen.push(godel(&it.next()?));
        }
        Some(seen[k].clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_levels() {
        let mut e = FormulaEnumerator::new(Signature::binary("E"));
        let one = e.of_size(1, 0);
        assert_eq!(*one, vec![Formula::True, Formula::False]);
        let two = e.of_size(1, 2);
        assert_eq!(two.len(), 2 + 4 + 4);
        let code = signature_code(&Signature::binary("E"));
        assert_eq!(sentence_at(&code, 1), Some(godel(&Formula::False)));
        assert_eq!(sentence_at(&BigUint::from(7u32), 0), None);
        assert_eq!(e.of_size(2, 0).len(), 2 + 2 * 4);
    }

    #[test]
    fn sentences_are_closed_and_distinct() {
        let all = first_sentences(&Signature::binary("E"), 3000);
        let mut seen = HashSet::new();
        for s in &all {
            assert!(s.is_sentence(), "{s}");
            assert!(seen.insert(s.clone()));
        }
        assert!(all.windows(2).all(|w| w[0].size() <= w[1].size()));
    }
}
