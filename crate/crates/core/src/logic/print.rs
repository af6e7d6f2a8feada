use std::fmt;

use super::syntax::Formula;

/// Whether a binary-connective operand needs its own parentheses.
/// Quantifier bodies extend as far right as possible, so a quantified
/// operand (possibly under negations) must be wrapped.
pub(crate) fn operand_needs_parens(f: &Formula) -> bool {
    match f {
        Formula::Not(g) => operand_needs_parens(g),
        Formula::Exists(..) | Formula::Forall(..) => true,
        _ => false,
    }
}

/// Text-level version of [`operand_needs_parens`] for canonical text.
pub(crate) fn text_needs_parens(t: &[u8]) -> bool {
    let s = t.iter().position(|&c| c != b'~').map_or(&t[t.len()..], |i| &t[i..]);
    s.starts_with(b"forall ") || s.starts_with(b"exists ")
}

fn operand(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if operand_needs_parens(f) {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(out, "true"),
            Formula::False => write!(out, "false"),
            Formula::Rel(r, args) if args.is_empty() => write!(out, "{r}"),
            Formula::Rel(r, args) => write!(out, "{r}({})", args.join(",")),
            Formula::Eq(a, b) => write!(out, "{a} = {b}"),
            Formula::Not(f) => write!(out, "~{f}"),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let op = match self {
                    Formula::And(..) => "&",
                    Formula::Or(..) => "|",
                    _ => "->",
                };
                write!(out, "(")?;
                operand(a, out)?;
                write!(out, " {op} ")?;
                operand(b, out)?;
                write!(out, ")")
            }
            Formula::Exists(v, f) => write!(out, "exists {v}. {f}"),
            Formula::Forall(v, f) => write!(out, "forall {v}. {f}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::syntax::*;

    #[test]
    fn canonical_text() {
        let f = Formula::forall("x", rel("E", &["x", "x"]));
        assert_eq!(f.to_string(), "forall x. E(x,x)");
        assert_eq!(f.clone().not().and(prop("P")).to_string(), "((~forall x. E(x,x)) & P)");
        assert_eq!(eq("x", "y").not().or(Formula::True).to_string(), "(~x = y | true)");
    }
}
