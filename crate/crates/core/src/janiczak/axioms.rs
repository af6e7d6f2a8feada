use num_bigint::BigUint;

use crate::logic::codes::godel;
use crate::logic::syntax::{Formula, Signature};
use crate::textcode;

pub const E: &str = "E";

fn v(k: usize) -> String {
    format!("x{k}")
}

fn e(rel: &str, a: &str, b: &str) -> Formula {
    Formula::Rel(rel.to_string(), vec![a.to_string(), b.to_string()])
}

fn ne(a: &str, b: &str) -> Formula {
    Formula::Eq(a.to_string(), b.to_string()).not()
}

/// `A_n` over `E`: some class has exactly `n+1` elements.
pub fn axiom_a(n: usize) -> Formula {
    axiom_a_over(E, n)
}

/// `A_n` over the relation `rel`. Quantifier rank `n+2`.
pub fn axiom_a_over(rel: &str, n: usize) -> Formula {
    let closing =
        Formula::forall("y", e(rel, "x0", "y").implies(Formula::disj((0..=n).map(|k| Formula::Eq("y".into(), v(k))))));
    let mut body = closing;
    for k in (1..=n).rev() {
        let xk = v(k);
        let mut parts = vec![e(rel, "x0", &xk)];
        parts.extend((0..k).map(|j| ne(&xk, &v(j))));
        parts.push(body);
        body = Formula::exists(&xk, Formula::conj(parts));
    }
    Formula::exists("x0", body)
}

/// Recognizes `A_n` over some relation, returning `(rel, n)`.
pub fn recognize_atom(f: &Formula) -> Option<(String, usize)> {
    let Formula::Exists(x0, mut body) = f.clone() else { return None };
    if x0 != "x0" {
        return None;
    }
    let mut n = 0;
    loop {
        match *body {
            Formula::Forall(_, inner) => {
                let Formula::Implies(lhs, _) = &*inner else { return None };
                let Formula::Rel(rel, _) = &**lhs else { return None };
                let rel = rel.clone();
                return (axiom_a_over(&rel, n) == *f).then_some((rel, n));
            }
            Formula::Exists(_, inner) => {
                n += 1;
                let mut cur = *inner;
                // the nested quantifier is the last conjunct
                loop {
                    match cur {
                        Formula::And(_, b) if matches!(*b, Formula::Exists(..) | Formula::Forall(..)) => {
                            body = b;
                            break;
                        }
                        Formula::And(a, _) => cur = *a,
                        _ => return None,
                    }
                }
            }
            _ => return None,
        }
        if n > 4096 {
            return None;
        }
    }
}

/// `⌜A_n⌝` over the relation whose name has text code `rel_code`.
pub fn atom_code(rel_code: &BigUint, n: u64) -> BigUint {
    let rel = textcode::decode_str(rel_code).filter(|r| Signature::new(&[(r, 2)]).is_ok() && is_relation_name(r));
    let rel = rel.unwrap_or_else(|| E.to_string());
    godel(&axiom_a_over(&rel, n as usize))
}

fn is_relation_name(r: &str) -> bool {
    r.starts_with(|c: char| c.is_ascii_uppercase())
        && r.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Reflexivity, symmetry and transitivity of `rel`.
pub fn j1_over(rel: &str) -> Formula {
    let refl = Formula::forall("x", e(rel, "x", "x"));
    let sym = Formula::forall("x", Formula::forall("y", e(rel, "x", "y").implies(e(rel, "y", "x"))));
    let trans = Formula::forall(
        "x",
        Formula::forall("y", Formula::forall("z", e(rel, "x", "y").and(e(rel, "y", "z")).implies(e(rel, "x", "z")))),
    );
    refl.and(sym).and(trans)
}

pub fn j1() -> Formula {
    j1_over(E)
}

/// The class of `x` has at least `n` elements, using fresh variables `{prefix}k`.
fn at_least(rel: &str, x: &str, n: usize, prefix: &str) -> Formula {
    if n <= 1 {
        return Formula::True;
    }
    let names: Vec<String> = (1..n).map(|k| format!("{prefix}{k}")).collect();
    let mut parts = Vec::new();
    for (k, a) in names.iter().enumerate() {
        parts.push(e(rel, x, a));
        parts.push(ne(a, x));
        for b in &names[..k] {
            parts.push(ne(a, b));
        }
    }
    let mut f = Formula::conj(parts);
    for a in names.iter().rev() {
        f = Formula::exists(a, f);
    }
    f
}

/// The class of `x` has exactly `n` elements.
fn exactly(rel: &str, x: &str, n: usize, prefix: &str) -> Formula {
    at_least(rel, x, n, prefix).and(at_least(rel, x, n + 1, prefix).not())
}

/// At most one class has exactly `n` elements.
pub fn j2_over(rel: &str, n: usize) -> Formula {
    Formula::forall(
        "x",
        Formula::forall("y", exactly(rel, "x", n, "u").and(exactly(rel, "y", n, "w")).implies(e(rel, "x", "y"))),
    )
}

pub fn j2(n: usize) -> Formula {
    j2_over(E, n)
}

/// At least `n` pairwise inequivalent classes with at least `n` elements.
pub fn j3_over(rel: &str, n: usize) -> Formula {
    let cs: Vec<String> = (0..n).map(|k| format!("c{k}")).collect();
    let mut parts = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        for d in &cs[..k] {
            parts.push(e(rel, c, d).not());
        }
        parts.push(at_least(rel, c, n, &format!("d{k}_")));
    }
    let mut f = Formula::conj(parts);
    for c in cs.iter().rev() {
        f = Formula::exists(c, f);
    }
    f
}

pub fn j3(n: usize) -> Formula {
    j3_over(E, n)
}
