//! Parser for the concrete formula syntax.
//!
//! ```text
//! formula := quant | imp
//! quant   := ("forall" | "exists") var+ "." formula
//! imp     := or ("->" formula)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | quant | "(" formula ")" | atom
//! atom    := "true" | "false" | Rel "(" var ("," var)* ")" | Rel | var "=" var
//!          | var "!=" var | "A" number
//! ```
//! Relation names start with an uppercase letter, variables with a lowercase
//! one. `A n` abbreviates the n-th Janiczak sentence over `E`.

use std::str::FromStr;

use super::syntax::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Equals,
    NotEquals,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'=' => Tok::Equals,
            b'-' if b.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'!' if b.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::NotEquals
            }
            c if c.is_ascii_digit() => {
                while i + 1 < b.len() && b[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n =
                    s[start..=i].parse().map_err(|_| Error::Syntax { pos: start, msg: "number too large".into() })?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < b.len() && (b[i + 1].is_ascii_alphanumeric() || b[i + 1] == b'_' || b[i + 1] == b'\'') {
                    i += 1;
                }
                Tok::Ident(s[start..=i].to_string())
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character {:?}", s[start..].chars().next().unwrap_or('?')),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

fn is_var(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_lowercase() || c == '_') && !matches!(s, "forall" | "exists" | "true" | "false")
}

fn is_rel(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_uppercase())
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn var(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(v)) if is_var(v) => {
                let v = v.clone();
                self.at += 1;
                Ok(v)
            }
            _ => self.err("expected variable"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn quantifier(&mut self) -> Result<Option<Formula>> {
        let universal = match self.peek() {
            Some(Tok::Ident(k)) if k == "forall" => true,
            Some(Tok::Ident(k)) if k == "exists" => false,
            _ => return Ok(None),
        };
        self.at += 1;
        let mut vars = vec![self.var()?];
        while let Some(Tok::Ident(v)) = self.peek() {
            if !is_var(v) {
                break;
            }
            vars.push(self.var()?);
        }
        self.expect(Tok::Dot, "'.' after quantified variables")?;
        let mut body = self.formula()?;
        for v in vars.iter().rev() {
            body = if universal { Formula::forall(v, body) } else { Formula::exists(v, body) };
        }
        Ok(Some(body))
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            f = f.or(self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Tilde) {
            return Ok(self.unary()?.not());
        }
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        if self.eat(&Tok::LParen) {
            let f = self.formula()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(f);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let name = match self.peek() {
            Some(Tok::Ident(n)) => n.clone(),
            Some(_) => return self.err("expected formula"),
            None => return self.err("unexpected end of input"),
        };
        match name.as_str() {
            "true" => {
                self.at += 1;
                return Ok(Formula::True);
            }
            "false" => {
                self.at += 1;
                return Ok(Formula::False);
            }
            _ => {}
        }
        if is_var(&name) {
            self.at += 1;
            let negated = match self.peek() {
                Some(Tok::Equals) => false,
                Some(Tok::NotEquals) => true,
                _ => return self.err("expected '=' or '!=' after variable"),
            };
            self.at += 1;
            let rhs = self.var()?;
            let f = Formula::Eq(name, rhs);
            return Ok(if negated { f.not() } else { f });
        }
        if !is_rel(&name) {
            return self.err(format!("bad identifier {name}"));
        }
        self.at += 1;
        if name == "A" {
            if let Some(&Tok::Num(n)) = self.peek() {
                self.at += 1;
                return Ok(crate::janiczak::axiom_a(n as usize));
            }
        }
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            args.push(self.var()?);
            while self.eat(&Tok::Comma) {
                args.push(self.var()?);
            }
            self.expect(Tok::RParen, "')' after arguments")?;
        }
        Ok(Formula::Rel(name, args))
    }
}

/// Parses a formula; free variables are allowed.
pub fn parse_formula(s: &str) -> Result<Formula> {
    let toks = lex(s)?;
    let mut p = Parser { toks, at: 0, len: s.len() };
    let f = p.formula()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses a closed formula.
pub fn parse_sentence(s: &str) -> Result<Formula> {
    let f = parse_formula(s)?;
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(Error::Input(format!("not a sentence; free variables {free:?}")));
    }
    Ok(f)
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::super::syntax::*;
    use super::*;

    #[test]
    fn precedence() {
        let f = parse_formula("~P & Q | R -> S -> T").unwrap();
        let want = prop("P").not().and(prop("Q")).or(prop("R")).implies(prop("S").implies(prop("T")));
        assert_eq!(f, want);
    }

    #[test]
    fn quantifier_scope() {
        let f = parse_formula("forall x y. E(x,y) -> x = y").unwrap();
        let want = Formula::forall("x", Formula::forall("y", rel("E", &["x", "y"]).implies(eq("x", "y"))));
        assert_eq!(f, want);
        let g = parse_formula("P & exists x. x != x").unwrap();
        assert_eq!(g, prop("P").and(Formula::exists("x", eq("x", "x").not())));
    }

    #[test]
    fn errors_carry_position() {
        match parse_formula("E(x,") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_formula("P # Q") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_sentence("E(x,x)").is_err());
        assert!(parse_formula("P Q").is_err());
    }

    #[test]
    fn primes_in_relation_names() {
        assert_eq!(parse_formula("E'(x,y)").unwrap(), rel("E'", &["x", "y"]));
    }
}
