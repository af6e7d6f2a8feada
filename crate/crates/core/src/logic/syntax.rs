use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First-order formulas over a relational signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Formula {
    True,
    False,
    /// `R(x⃗)`; 0-ary relations are propositional constants.
    Rel(String, Vec<String>),
    Eq(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

pub type Sentence = Formula;

impl From<Formula> for String {
    fn from(f: Formula) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Formula {
    type Error = Error;
    fn try_from(s: String) -> Result<Formula> {
        s.parse()
    }
}

pub fn rel(name: &str, args: &[&str]) -> Formula {
    Formula::Rel(name.to_string(), args.iter().map(|a| a.to_string()).collect())
}

pub fn eq(a: &str, b: &str) -> Formula {
    Formula::Eq(a.to_string(), b.to_string())
}

pub fn prop(name: &str) -> Formula {
    Formula::Rel(name.to_string(), vec![])
}

impl Formula {
    #[allow(clippy::should_implement_trait)] // builder style, chained with `and`, `or`
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        self.clone().implies(other.clone()).and(other.implies(self))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conj(fs: impl IntoIterator<Item = Formula>) -> Formula {
        fs.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disj(fs: impl IntoIterator<Item = Formula>) -> Formula {
        fs.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut see = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Rel(_, args) => args.iter().for_each(|a| see(a, bound)),
            Formula::Eq(a, b) => {
                see(a, bound);
                see(b, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Rel(_, args) => out.extend(args.iter().cloned()),
            Formula::Eq(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// Quantifier rank.
    pub fn rank(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Rel(..) | Formula::Eq(..) => 0,
            Formula::Not(f) => f.rank(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.rank().max(b.rank()),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.rank(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Rel(..) | Formula::Eq(..) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Relation symbols used, with the arity at each use.
    pub fn relations(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Rel(r, args) = f {
                out.insert((r.clone(), args.len()));
            }
        });
        out
    }

    /// Capture-avoiding simultaneous renaming of free variables.
    pub fn rename_free(&self, map: &HashMap<String, String>) -> Formula {
        let mut avoid = self.all_vars();
        avoid.extend(map.keys().cloned());
        avoid.extend(map.values().cloned());
        self.rename_inner(map, &mut avoid)
    }

    fn rename_inner(&self, map: &HashMap<String, String>, avoid: &mut BTreeSet<String>) -> Formula {
        let r = |v: &String| map.get(v).cloned().unwrap_or_else(|| v.clone());
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Rel(n, args) => Formula::Rel(n.clone(), args.iter().map(r).collect()),
            Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
            Formula::Not(f) => f.rename_inner(map, avoid).not(),
            Formula::And(a, b) => a.rename_inner(map, avoid).and(b.rename_inner(map, avoid)),
            Formula::Or(a, b) => a.rename_inner(map, avoid).or(b.rename_inner(map, avoid)),
            Formula::Implies(a, b) => a.rename_inner(map, avoid).implies(b.rename_inner(map, avoid)),
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut inner: HashMap<String, String> = map.clone();
                inner.remove(v);
                let body_free = f.free_vars();
                let captures = inner.iter().any(|(k, val)| val == v && body_free.contains(k));
                let nv = if captures {
                    let fresh = fresh_var(avoid);
                    inner.insert(v.clone(), fresh.clone());
                    fresh
                } else {
                    v.clone()
                };
                let body = Box::new(f.rename_inner(&inner, avoid));
                match self {
                    Formula::Exists(..) => Formula::Exists(nv, body),
                    _ => Formula::Forall(nv, body),
                }
            }
        }
    }

    /// Replaces every occurrence of the 0-ary relation `name` by a constant.
    pub fn subst_prop(&self, name: &str, value: bool) -> Formula {
        match self {
            Formula::Rel(n, args) if n == name && args.is_empty() => {
                if value {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            Formula::Not(f) => f.subst_prop(name, value).not(),
            Formula::And(a, b) => a.subst_prop(name, value).and(b.subst_prop(name, value)),
            Formula::Or(a, b) => a.subst_prop(name, value).or(b.subst_prop(name, value)),
            Formula::Implies(a, b) => a.subst_prop(name, value).implies(b.subst_prop(name, value)),
            Formula::Exists(v, f) => Formula::exists(v, f.subst_prop(name, value)),
            Formula::Forall(v, f) => Formula::forall(v, f.subst_prop(name, value)),
            other => other.clone(),
        }
    }

    /// Renames a relation symbol throughout.
    pub fn rename_relation(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Rel(n, args) if n == from => Formula::Rel(to.to_string(), args.clone()),
            Formula::Not(f) => f.rename_relation(from, to).not(),
            Formula::And(a, b) => a.rename_relation(from, to).and(b.rename_relation(from, to)),
            Formula::Or(a, b) => a.rename_relation(from, to).or(b.rename_relation(from, to)),
            Formula::Implies(a, b) => a.rename_relation(from, to).implies(b.rename_relation(from, to)),
            Formula::Exists(v, f) => Formula::exists(v, f.rename_relation(from, to)),
            Formula::Forall(v, f) => Formula::forall(v, f.rename_relation(from, to)),
            other => other.clone(),
        }
    }

    /// Propagates `true`/`false` through connectives and vacuous quantifiers.
    pub fn simplify_constants(&self) -> Formula {
        use Formula::*;
        match self {
            Not(f) => match f.simplify_constants() {
                True => False,
                False => True,
                g => g.not(),
            },
            And(a, b) => match (a.simplify_constants(), b.simplify_constants()) {
                (False, _) | (_, False) => False,
                (True, g) | (g, True) => g,
                (x, y) => x.and(y),
            },
            Or(a, b) => match (a.simplify_constants(), b.simplify_constants()) {
                (True, _) | (_, True) => True,
                (False, g) | (g, False) => g,
                (x, y) => x.or(y),
            },
            Implies(a, b) => match (a.simplify_constants(), b.simplify_constants()) {
                (False, _) | (_, True) => True,
                (True, g) => g,
                (g, False) => g.not(),
                (x, y) => x.implies(y),
            },
            // domains are non-empty
            Exists(v, f) => match f.simplify_constants() {
                g @ (True | False) => g,
                g => Formula::exists(v, g),
            },
            Forall(v, f) => match f.simplify_constants() {
                g @ (True | False) => g,
                g => Formula::forall(v, g),
            },
            other => other.clone(),
        }
    }

    /// α-equivalence.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn go(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
            let var_eq = |x: &String, y: &String, env: &Vec<(String, String)>| {
                for (l, r) in env.iter().rev() {
                    if l == x || r == y {
                        return l == x && r == y;
                    }
                }
                x == y
            };
            use Formula::*;
            match (a, b) {
                (True, True) | (False, False) => true,
                (Rel(n, xs), Rel(m, ys)) => {
                    n == m && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| var_eq(x, y, env))
                }
                (Eq(a1, a2), Eq(b1, b2)) => var_eq(a1, b1, env) && var_eq(a2, b2, env),
                (Not(x), Not(y)) => go(x, y, env),
                (And(a1, a2), And(b1, b2)) | (Or(a1, a2), Or(b1, b2)) | (Implies(a1, a2), Implies(b1, b2)) => {
                    go(a1, b1, env) && go(a2, b2, env)
                }
                (Exists(x, f), Exists(y, g)) | (Forall(x, f), Forall(y, g)) => {
                    env.push((x.clone(), y.clone()));
                    let r = go(f, g, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}

pub fn fresh_var(avoid: &mut BTreeSet<String>) -> String {
    let mut k = 0;
    loop {
        let v = format!("v{k}");
        if !avoid.contains(&v) {
            avoid.insert(v.clone());
            return v;
        }
        k += 1;
    }
}

/// A finite relational signature. Names are unique.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub relations: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new(rels: &[(&str, usize)]) -> Result<Signature> {
        let mut relations = BTreeMap::new();
        for (n, a) in rels {
            if relations.insert(n.to_string(), *a).is_some() {
                return Err(Error::Input(format!("duplicate relation symbol {n}")));
            }
        }
        Ok(Signature { relations })
    }

    /// The signature `{E}` of a single binary relation.
    pub fn binary(name: &str) -> Signature {
        Signature::new(&[(name, 2)]).expect("single symbol")
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn is_disjoint(&self, other: &Signature) -> bool {
        self.relations.keys().all(|k| !other.relations.contains_key(k))
    }

    pub fn disjoint_union(&self, other: &Signature) -> Result<Signature> {
        if !self.is_disjoint(other) {
            let clash: Vec<_> = self.relations.keys().filter(|k| other.relations.contains_key(*k)).collect();
            return Err(Error::Input(format!("signature clash on {clash:?}")));
        }
        let mut relations = self.relations.clone();
        relations.extend(other.relations.clone());
        Ok(Signature { relations })
    }

    pub fn with(&self, name: &str, arity: usize) -> Result<Signature> {
        self.disjoint_union(&Signature::new(&[(name, arity)])?)
    }

    /// Checks that `f` only uses symbols of this signature at their arities.
    pub fn check(&self, f: &Formula) -> Result<()> {
        for (r, a) in f.relations() {
            match self.arity(&r) {
                Some(k) if k == a => {}
                Some(k) => return Err(Error::Input(format!("{r} has arity {k}, used with {a}"))),
                None => return Err(Error::Input(format!("symbol {r} not in signature"))),
            }
        }
        Ok(())
    }

    pub fn admits(&self, f: &Formula) -> bool {
        self.check(f).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rename_avoids_capture() {
        // ∃y E(x,y) with x ↦ y must rename the binder
        let f = Formula::exists("y", rel("E", &["x", "y"]));
        let map = HashMap::from([("x".to_string(), "y".to_string())]);
        let g = f.rename_free(&map);
        match &g {
            Formula::Exists(v, body) => {
                assert_ne!(v, "y");
                assert_eq!(**body, rel("E", &["y", v]));
            }
            _ => panic!("{g:?}"),
        }
        assert_eq!(g.free_vars(), BTreeSet::from(["y".to_string()]));
    }

    #[test]
    fn measures() {
        let f = Formula::forall("x", Formula::exists("y", rel("E", &["x", "y"])).and(eq("x", "x")));
        assert_eq!(f.rank(), 2);
        assert_eq!(f.size(), 5);
        assert!(f.is_sentence());
        assert!(f.alpha_eq(&Formula::forall("z", Formula::exists("w", rel("E", &["z", "w"])).and(eq("z", "z")))));
        assert!(!f.alpha_eq(&Formula::forall("z", Formula::exists("w", rel("E", &["w", "z"])).and(eq("z", "z")))));
    }

    #[test]
    fn constant_simplification() {
        let p = prop("P");
        let f = p.clone().implies(rel("E", &["x", "x"])).and(p.clone().not().implies(Formula::False));
        assert_eq!(f.subst_prop("P", true).simplify_constants(), rel("E", &["x", "x"]));
        assert_eq!(f.subst_prop("P", false).simplify_constants(), Formula::False);
    }
}
