//! Truth of sentences over `{E}` in the J-models with a given size profile.
//!
//! Models are explored abstractly. A named element is a class plus a
//! position inside it. A class is either the unique finite class of some
//! size listed in the profile, or one of an inexhaustible supply of large
//! classes. A quantifier with `q` quantifiers left in its scope ranges over
//! the named elements, one fresh element of each named class with room left,
//! one element of each unused present finite class of size below `q`, and one
//! element of a fresh large class. Larger finite classes cannot be told apart
//! from large ones by the remaining quantifiers.

use serde::{Deserialize, Serialize};

use super::axioms::recognize_atom;
use super::profile::SizeProfile;
use crate::error::{Error, Result};
use crate::logic::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    Finite(usize),
    Large(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Element {
    pub class: ClassTag,
    pub index: usize,
}

/// A profile together with the elements named so far.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractModel {
    pub profile: SizeProfile,
    pub named: Vec<Element>,
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Rel(usize, usize),
    Eq(usize, usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
    Atom(usize),
}

fn compile(f: &Formula, rel: &str, scope: &mut Vec<String>) -> Result<Node> {
    let lookup = |v: &String, scope: &Vec<String>| {
        scope.iter().rposition(|w| w == v).ok_or_else(|| Error::Input(format!("free variable {v}")))
    };
    Ok(match f {
        Formula::True => Node::Const(true),
        Formula::False => Node::Const(false),
        Formula::Rel(r, args) if r == rel && args.len() == 2 => {
            Node::Rel(lookup(&args[0], scope)?, lookup(&args[1], scope)?)
        }
        Formula::Rel(r, args) => return Err(Error::Input(format!("symbol {r}/{} is not {rel}/2", args.len()))),
        Formula::Eq(a, b) => Node::Eq(lookup(a, scope)?, lookup(b, scope)?),
        Formula::Not(g) => Node::Not(Box::new(compile(g, rel, scope)?)),
        Formula::And(a, b) => Node::And(Box::new(compile(a, rel, scope)?), Box::new(compile(b, rel, scope)?)),
        Formula::Or(a, b) => Node::Or(Box::new(compile(a, rel, scope)?), Box::new(compile(b, rel, scope)?)),
        Formula::Implies(a, b) => Node::Imp(Box::new(compile(a, rel, scope)?), Box::new(compile(b, rel, scope)?)),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            if let Some((r, n)) = recognize_atom(f) {
                if r == rel {
                    return Ok(Node::Atom(n));
                }
            }
            scope.push(v.clone());
            let body = compile(g, rel, scope);
            scope.pop();
            let q = f.rank();
            match f {
                Formula::Exists(..) => Node::Exists(q, Box::new(body?)),
                _ => Node::Forall(q, Box::new(body?)),
            }
        }
    })
}

struct Evaluator<'a> {
    profile: &'a SizeProfile,
    env: Vec<Element>,
    steps: u64,
    budget: u64,
}

impl Evaluator<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::OutOfFuel(format!("abstract evaluation exceeded {} steps", self.budget)));
        }
        Ok(())
    }

    fn choices(&self, q: usize) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::new();
        for e in &self.env {
            if !out.contains(e) {
                out.push(*e);
            }
        }
        let named = out.clone();
        let mut classes: Vec<ClassTag> = Vec::new();
        for e in &named {
            if !classes.contains(&e.class) {
                classes.push(e.class);
            }
        }
        let mut large = 0;
        for &c in &classes {
            let used = named.iter().filter(|e| e.class == c).count();
            match c {
                ClassTag::Finite(s) if used >= s => {}
                _ => out.push(Element { class: c, index: used }),
            }
            if let ClassTag::Large(k) = c {
                large = large.max(k + 1);
            }
        }
        for &s in &self.profile.present {
            if s < q && !classes.contains(&ClassTag::Finite(s)) {
                out.push(Element { class: ClassTag::Finite(s), index: 0 });
            }
        }
        out.push(Element { class: ClassTag::Large(large), index: 0 });
        out
    }

    fn eval(&mut self, n: &Node) -> Result<bool> {
        self.tick()?;
        Ok(match n {
            Node::Const(b) => *b,
            Node::Rel(a, b) => self.env[*a].class == self.env[*b].class,
            Node::Eq(a, b) => self.env[*a] == self.env[*b],
            Node::Not(g) => !self.eval(g)?,
            Node::And(a, b) => self.eval(a)? && self.eval(b)?,
            Node::Or(a, b) => self.eval(a)? || self.eval(b)?,
            Node::Imp(a, b) => !self.eval(a)? || self.eval(b)?,
            Node::Atom(k) => self.profile.has(k + 1),
            Node::Exists(q, g) | Node::Forall(q, g) => {
                let want = matches!(n, Node::Exists(..));
                for c in self.choices(*q) {
                    self.env.push(c);
                    let v = self.eval(g);
                    self.env.pop();
                    if v? == want {
                        return Ok(want);
                    }
                }
                !want
            }
        })
    }
}

/// The profile bound needed to evaluate a sentence of quantifier rank `rank`.
pub fn required_bound(rank: usize) -> usize {
    rank + 1
}

/// Truth of the sentence `s` over `rel` in every J-model with profile `p`.
pub fn eval_over(s: &Formula, rel: &str, p: &SizeProfile, budget: u64) -> Result<(bool, u64)> {
    let need = required_bound(s.rank());
    if p.bound < need {
        return Err(Error::Input(format!("profile bound {} too small; this sentence needs bound {need}", p.bound)));
    }
    let node = compile(s, rel, &mut Vec::new())?;
    let mut ev = Evaluator { profile: p, env: Vec::new(), steps: 0, budget };
    let v = ev.eval(&node)?;
    Ok((v, ev.steps))
}

/// Truth of the sentence `s` over `E` in every J-model with profile `p`.
pub fn eval(s: &Formula, p: &SizeProfile) -> Result<bool> {
    Ok(eval_over(s, super::axioms::E, p, u64::MAX)?.0)
}
