//! Parsing of command-line inputs.

use std::path::Path;
use std::str::FromStr;

use insep::construct::vbuild::E_PRIME;
use insep::construct::xbuild::default_subject;
use insep::logic::{parse_sentence, AtomSet, Formula, Signature, Theory};
use insep::recfun::{Decidable, Index, Program};
use insep::{Error, Result};
use num_bigint::BigUint;
use serde_json::Value;

use crate::ProgramArg;

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn nat(tok: &str) -> Result<BigUint> {
    BigUint::from_str(tok.trim()).map_err(|_| Error::Input(format!("not a natural number: {tok:?}")))
}

/// Comma-separated naturals; the empty string gives none.
pub fn nats(s: &str) -> Result<Vec<BigUint>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(nat).collect()
}

/// A program from `--index` or `--program`, with the inline input recorded.
pub fn program(arg: &ProgramArg) -> Result<(Index, Value)> {
    if let Some(i) = &arg.index {
        let index = Index::new(nat(i)?);
        return Ok((index.clone(), serde_json::json!({ "index": index.index.to_string() })));
    }
    let path = arg.program.as_ref().ok_or_else(|| Error::Input("no program given".into()))?;
    let text = read(path)?;
    let trimmed = text.trim_end_matches(['\n', '\r']);
    if trimmed.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| Error::Input(format!("program JSON: {e}")))?;
        if v.get("index").is_some() {
            let index: Index =
                serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("index JSON: {e}")))?;
            return Ok((index, v));
        }
        let p: Program = serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("program JSON: {e}")))?;
        p.validate()?;
        return Ok((Index::of(&p), v));
    }
    let p = Program::from_str(trimmed)?;
    Ok((Index::of(&p), Value::String(trimmed.to_string())))
}

/// `E/2,P/0`.
pub fn signature(s: &str) -> Result<Signature> {
    let mut rels = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, arity) =
            part.split_once('/').ok_or_else(|| Error::Input(format!("expected NAME/ARITY, got {part:?}")))?;
        let arity: usize = arity.parse().map_err(|_| Error::Input(format!("bad arity in {part:?}")))?;
        rels.push((name.to_string(), arity));
    }
    let refs: Vec<(&str, usize)> = rels.iter().map(|(n, a)| (n.as_str(), *a)).collect();
    Signature::new(&refs)
}

/// `mod M: r,...`, `finite: a,...`, `below N`, `all`, `empty`, or JSON.
pub fn decidable(s: &str) -> Result<Decidable> {
    let t = s.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| Error::Input(format!("set JSON: {e}")));
    }
    if t == "all" {
        return Ok(Decidable::All);
    }
    if t == "empty" {
        return Ok(Decidable::Empty);
    }
    if let Some(rest) = t.strip_prefix("below ") {
        return Ok(Decidable::Below { bound: nat(rest)? });
    }
    if let Some(rest) = t.strip_prefix("finite:") {
        return Ok(Decidable::Finite { members: nats(rest)? });
    }
    if let Some(rest) = t.strip_prefix("mod ") {
        let (m, rs) =
            rest.split_once(':').ok_or_else(|| Error::Input(format!("expected `mod M: r,...`, got {t:?}")))?;
        let m: u64 = m.trim().parse().map_err(|_| Error::Input(format!("bad modulus in {t:?}")))?;
        if m == 0 {
            return Err(Error::Input("modulus must be positive".into()));
        }
        let rs: Vec<u64> = rs
            .split(',')
            .map(|r| r.trim().parse().map_err(|_| Error::Input(format!("bad residue in {t:?}"))))
            .collect::<Result<_>>()?;
        return Ok(Decidable::residues(m, &rs));
    }
    Err(Error::Input(format!("unrecognized set {t:?}")))
}

/// A builtin theory name (`J`, `J'`, `U`) or a theory JSON file.
pub fn theory(s: &str) -> Result<Theory> {
    match s {
        "J" => Ok(Theory::j()),
        "J'" => Ok(Theory::janiczak("J'", E_PRIME, AtomSet::empty(), AtomSet::empty(), vec![])),
        "U" => Ok(default_subject()),
        path => serde_json::from_str(&read(Path::new(path))?).map_err(|e| Error::Input(format!("theory JSON: {e}"))),
    }
}

pub fn subject(s: Option<&str>) -> Result<Theory> {
    s.map_or_else(|| Ok(default_subject()), theory)
}

pub fn sentence(s: &str) -> Result<Formula> {
    parse_sentence(s)
}

/// Non-empty lines of a file, as sentences.
pub fn sentences(path: &Path) -> Result<Vec<Formula>> {
    read(path)?.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(sentence).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_shorthands() {
        assert_eq!(decidable("mod 4: 0, 2").unwrap(), Decidable::residues(4, &[0, 2]));
        assert_eq!(decidable("finite: 1,2").unwrap(), Decidable::finite([1, 2]));
        assert!(decidable("mod 0: 1").is_err());
        assert!(decidable("odd").is_err());
    }

    #[test]
    fn signatures_and_numbers() {
        let s = signature("E/2, P/0").unwrap();
        assert_eq!(s.arity("P"), Some(0));
        assert!(signature("E").is_err());
        assert_eq!(nats("1,2").unwrap().len(), 2);
        assert!(nats("1,x").is_err());
    }
}
