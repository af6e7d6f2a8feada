//! Theories: a signature, an axiom source and, when available, a decider.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::codes::{godel, ungodel};
use super::enumerate::FormulaEnumerator;
use super::prover;
use super::syntax::{Formula, Signature};
use crate::error::{Error, Result};
use crate::janiczak::{self, BoolComb, Decision};
use crate::recfun::{Decidable, Fuel, ReSet};
use crate::textcode;

/// The 0-ary marker symbol of `U ⊕ V`.
pub const P: &str = "P";

/// A set of `A`-atom indices used for literal axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AtomSet {
    Decidable {
        set: Decidable,
    },
    /// `{F(x) : x ∈ base}` for a strictly increasing `F` known on a prefix.
    Image {
        base: ReSet,
        f_prefix: Vec<u64>,
    },
    /// `{F(x) : φ_x(x) = value}`; a halting diagonal run settles membership exactly.
    Diagonal {
        value: u64,
        f_prefix: Vec<u64>,
    },
}

impl AtomSet {
    pub fn empty() -> AtomSet {
        AtomSet::Decidable { set: Decidable::Empty }
    }

    /// Membership of atom `s`; `None` when it cannot be settled with `fuel`.
    pub fn member(&self, s: usize, fuel: u64) -> Option<bool> {
        match self {
            AtomSet::Decidable { set } => Some(set.contains(&BigUint::from(s))),
            AtomSet::Image { base, f_prefix } => {
                if f_prefix.last().is_none_or(|&l| (s as u64) > l) {
                    return None;
                }
                match f_prefix.iter().position(|&v| v == s as u64) {
                    None => Some(false),
                    Some(x) => base.semi_contains(&BigUint::from(x), Fuel(fuel)),
                }
            }
            AtomSet::Diagonal { value, f_prefix } => {
                if f_prefix.last().is_none_or(|&l| (s as u64) > l) {
                    return None;
                }
                match f_prefix.iter().position(|&v| v == s as u64) {
                    None => Some(false),
                    Some(x) => diagonal_value(x, fuel).map(|v| v == BigUint::from(*value)),
                }
            }
        }
    }

    /// Atoms confirmed as members at enumeration stage `k`.
    fn found_by_stage(&self, k: usize) -> BTreeSet<usize> {
        match self {
            AtomSet::Decidable { set } => (0..=k).filter(|&s| set.contains(&BigUint::from(s))).collect(),
            AtomSet::Image { base, f_prefix } => f_prefix
                .iter()
                .enumerate()
                .take(k + 1)
                .filter(|(x, _)| base.semi_contains(&BigUint::from(*x), Fuel(k as u64)) == Some(true))
                .map(|(_, &v)| v as usize)
                .collect(),
            AtomSet::Diagonal { value, f_prefix } => f_prefix
                .iter()
                .enumerate()
                .take(k + 1)
                .filter(|(x, _)| diagonal_value(*x, k as u64) == Some(BigUint::from(*value)))
                .map(|(_, &v)| v as usize)
                .collect(),
        }
    }
}

/// `φ_x(x)` if it halts within `fuel` steps.
fn diagonal_value(x: usize, fuel: u64) -> Option<BigUint> {
    let x = BigUint::from(x);
    crate::recfun::apply_index(&x, std::slice::from_ref(&x), Fuel(fuel)).value().cloned()
}

/// `J + {A_n : n ∈ positive} + {¬A_n : n ∈ negative} + extra` over one relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JSpec {
    pub relation: String,
    pub positive: AtomSet,
    pub negative: AtomSet,
    #[serde(default)]
    pub extra: Vec<BoolComb>,
    /// Fuel for settling membership in non-decidable atom sets.
    pub literal_fuel: u64,
}

impl JSpec {
    /// Literal status of atom `s`; an error when membership is unsettled.
    pub fn literal(&self, s: usize) -> Result<Option<bool>> {
        let pos = self.positive.member(s, self.literal_fuel);
        let neg = self.negative.member(s, self.literal_fuel);
        match (pos, neg) {
            (Some(true), _) => Ok(Some(true)),
            (_, Some(true)) => Ok(Some(false)),
            (Some(false), Some(false)) => Ok(None),
            _ => Err(Error::OutOfFuel(format!("membership of atom {s} unsettled with fuel {}", self.literal_fuel))),
        }
    }
}

/// Which values of `P` the models of an `⊕` theory may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PMode {
    Both,
    OnlyTrue,
    OnlyFalse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Axioms {
    Janiczak(JSpec),
    Oplus {
        left: Box<Theory>,
        right: Box<Theory>,
        mode: PMode,
    },
    Listed {
        sentences: Vec<Formula>,
    },
    /// `W_i` as sentences plus the negations of `W_j`.
    FromSets {
        i: ReSet,
        j: ReSet,
    },
    Enumerated {
        set: ReSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub axioms: Axioms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum Verdict {
    Provable,
    NotProvable { countermodel: String },
    Inconsistent,
}

impl Verdict {
    /// Whether the sentence is a theorem (everything is, in an inconsistent theory).
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::NotProvable { .. })
    }
}

/// Enumeration budget for axioms drawn from RE sets.
const AXIOM_SEARCH_BUDGET: u64 = 120;
/// Per-candidate budget of the fallback prover in theorem streams.
const STREAM_PROOF_BUDGET: u64 = 20_000;

fn branch_decider(side: &Theory, other: &Signature, chi: &Formula, budget: u64) -> Result<(Verdict, u64)> {
    let mut foreign: Vec<Formula> = Vec::new();
    collect_components(chi, &mut |c| {
        let rels: BTreeSet<String> = c.relations().into_iter().map(|(r, _)| r).collect();
        let own = rels.iter().all(|r| side.signature.arity(r).is_some());
        let alien = rels.iter().all(|r| other.arity(r).is_some());
        if own {
            Ok(())
        } else if alien {
            if !foreign.contains(c) {
                foreign.push(c.clone());
            }
            Ok(())
        } else {
            Err(Error::Undecidable(format!("{c} mixes symbols of both summands")))
        }
    })?;
    if foreign.len() > 10 {
        return Err(Error::Resource(format!("{} foreign subsentences", foreign.len())));
    }
    let mut cost = 0;
    let mut refuted = 0usize;
    let mut first_refutation = None;
    for bits in 0..1u32 << foreign.len() {
        let psi = replace_components(chi, &foreign, bits).simplify_constants();
        let (v, c) = side.decide(&psi, budget.saturating_sub(cost))?;
        cost += c;
        match v {
            Verdict::Inconsistent => return Ok((Verdict::Inconsistent, cost)),
            Verdict::Provable => {}
            Verdict::NotProvable { countermodel } => {
                refuted += 1;
                first_refutation.get_or_insert(countermodel);
            }
        }
    }
    match first_refutation {
        None => Ok((Verdict::Provable, cost)),
        // every way the foreign sentences could go is refutable, so some is realized
        Some(countermodel) if refuted == 1 << foreign.len() => Ok((Verdict::NotProvable { countermodel }, cost)),
        Some(_) => Err(Error::Undecidable("refutation depends on sentences of the other summand".into())),
    }
}

/// Calls `f` on each maximal subsentence that is not a boolean combination.
fn collect_components(f: &Formula, visit: &mut impl FnMut(&Formula) -> Result<()>) -> Result<()> {
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::Not(g) => collect_components(g, visit),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_components(a, visit)?;
            collect_components(b, visit)
        }
        other => visit(other),
    }
}

fn replace_components(f: &Formula, comps: &[Formula], bits: u32) -> Formula {
    if let Some(k) = comps.iter().position(|c| c == f) {
        return if bits >> k & 1 == 1 { Formula::True } else { Formula::False };
    }
    match f {
        Formula::Not(g) => replace_components(g, comps, bits).not(),
        Formula::And(a, b) => replace_components(a, comps, bits).and(replace_components(b, comps, bits)),
        Formula::Or(a, b) => replace_components(a, comps, bits).or(replace_components(b, comps, bits)),
        Formula::Implies(a, b) => replace_components(a, comps, bits).implies(replace_components(b, comps, bits)),
        other => other.clone(),
    }
}

impl Theory {
    /// J over the relation `rel`, with literal sets and extra axioms.
    pub fn janiczak(name: &str, rel: &str, positive: AtomSet, negative: AtomSet, extra: Vec<BoolComb>) -> Theory {
        Theory {
            name: name.to_string(),
            signature: Signature::binary(rel),
            axioms: Axioms::Janiczak(JSpec {
                relation: rel.to_string(),
                positive,
                negative,
                extra,
                literal_fuel: 10_000,
            }),
        }
    }

    /// Janiczak's theory J.
    pub fn j() -> Theory {
        Theory::janiczak("J", janiczak::E, AtomSet::empty(), AtomSet::empty(), vec![])
    }

    pub fn listed(name: &str, signature: Signature, sentences: Vec<Formula>) -> Result<Theory> {
        for s in &sentences {
            signature.check(s)?;
            if !s.is_sentence() {
                return Err(Error::Input(format!("axiom {s} is not a sentence")));
            }
        }
        Ok(Theory { name: name.to_string(), signature, axioms: Axioms::Listed { sentences } })
    }

    /// The same theory with `P` (or `¬P`) added; only meaningful for `⊕` theories.
    pub fn with_p(&self, value: bool) -> Result<Theory> {
        match &self.axioms {
            Axioms::Oplus { left, right, mode: PMode::Both } => Ok(Theory {
                name: format!("{} + {}P", self.name, if value { "" } else { "~" }),
                signature: self.signature.clone(),
                axioms: Axioms::Oplus {
                    left: left.clone(),
                    right: right.clone(),
                    mode: if value { PMode::OnlyTrue } else { PMode::OnlyFalse },
                },
            }),
            _ => Err(Error::Input("P can only be added to an ⊕ theory".into())),
        }
    }

    pub fn has_decider(&self) -> bool {
        match &self.axioms {
            Axioms::Janiczak(_) => true,
            Axioms::Oplus { left, right, .. } => left.has_decider() && right.has_decider(),
            _ => false,
        }
    }

    /// Decides `self ⊢ s` within `budget` units of work.
    pub fn decide(&self, s: &Formula, budget: u64) -> Result<(Verdict, u64)> {
        self.signature.check(s)?;
        if !s.is_sentence() {
            return Err(Error::Input(format!("not a sentence: {s}")));
        }
        match &self.axioms {
            Axioms::Janiczak(spec) => {
                let (nf, steps) = janiczak::normal_form_over(s, &spec.relation, budget)?;
                let lit = |a: usize| spec.literal(a);
                let verdict = match janiczak::decide_comb(&spec.extra, &lit, &nf)? {
                    Decision::Provable => Verdict::Provable,
                    Decision::Inconsistent => Verdict::Inconsistent,
                    Decision::NotProvable { countermodel } => {
                        let sizes: Vec<String> = countermodel.present.iter().map(|s| s.to_string()).collect();
                        Verdict::NotProvable {
                            countermodel: format!(
                                "{}: class sizes {{{}}} among 1..={}",
                                spec.relation,
                                sizes.join(","),
                                countermodel.bound
                            ),
                        }
                    }
                };
                Ok((verdict, steps + 1))
            }
            Axioms::Oplus { left, right, mode } => {
                let branches: &[bool] = match mode {
                    PMode::Both => &[true, false],
                    PMode::OnlyTrue => &[true],
                    PMode::OnlyFalse => &[false],
                };
                let mut cost = 0;
                let mut vacuous = 0;
                let mut undecided = None;
                for &b in branches {
                    let chi = s.subst_prop(P, b).simplify_constants();
                    let (side, other) = if b { (left, right) } else { (right, left) };
                    match branch_decider(side, &other.signature, &chi, budget.saturating_sub(cost)) {
                        Ok((v, c)) => {
                            cost += c;
                            match v {
                                Verdict::Provable => {}
                                Verdict::Inconsistent => vacuous += 1,
                                Verdict::NotProvable { countermodel } => {
                                    let p = if b { "P" } else { "~P" };
                                    return Ok((
                                        Verdict::NotProvable { countermodel: format!("{p}; {countermodel}") },
                                        cost,
                                    ));
                                }
                            }
                        }
                        Err(e @ Error::Undecidable(_)) => undecided = Some(e),
                        Err(e) => return Err(e),
                    }
                }
                if let Some(e) = undecided {
                    return Err(e);
                }
                if vacuous == branches.len() {
                    return Ok((Verdict::Inconsistent, cost));
                }
                Ok((Verdict::Provable, cost))
            }
            _ => Err(Error::Undecidable(format!("theory {} carries no decider", self.name))),
        }
    }

    /// `self ⊢ s` for theories with a decider.
    pub fn proves(&self, s: &Formula) -> Result<bool> {
        Ok(self.decide(s, janiczak::DEFAULT_BUDGET)?.0.holds())
    }

    /// The first `count` axioms (fewer if the source is exhausted or slow).
    pub fn axioms_prefix(&self, count: usize) -> Vec<Formula> {
        match &self.axioms {
            Axioms::Janiczak(spec) => janiczak_axioms(spec, count),
            Axioms::Oplus { left, right, mode } => {
                let mut out = Vec::new();
                match mode {
                    PMode::OnlyTrue => out.push(super::syntax::prop(P)),
                    PMode::OnlyFalse => out.push(super::syntax::prop(P).not()),
                    PMode::Both => {}
                }
                let half = count.div_ceil(2);
                let us = left.theorem_stream(half);
                let vs = right.theorem_stream(half);
                for k in 0..half {
                    if let Some(u) = us.get(k) {
                        out.push(super::syntax::prop(P).implies(u.clone()));
                    }
                    if let Some(v) = vs.get(k) {
                        out.push(super::syntax::prop(P).not().implies(v.clone()));
                    }
                }
                out.truncate(count);
                out
            }
            Axioms::Listed { sentences } => sentences.iter().take(count).cloned().collect(),
            Axioms::FromSets { i, j } => {
                let pos = sentence_members(i, &self.signature, count);
                let neg = sentence_members(j, &self.signature, count);
                let mut out = Vec::new();
                for k in 0..pos.len().max(neg.len()) {
                    out.extend(pos.get(k).cloned());
                    out.extend(neg.get(k).map(|f| f.clone().not()));
                }
                out.truncate(count);
                out
            }
            Axioms::Enumerated { set } => sentence_members(set, &self.signature, count),
        }
    }

    /// The first `count` entries of the canonical theorem enumeration.
    ///
    /// Entry `2^k - 1` is the `k`-th axiom; the other entries run through the
    /// canonical sentence enumeration keeping the sentences shown provable,
    /// by the decider when there is one and otherwise by bounded proof search
    /// from the axioms listed so far.
    pub fn theorem_stream(&self, count: usize) -> Vec<Formula> {
        let axiom_slots = (usize::BITS - count.leading_zeros()) as usize;
        let axioms = self.axioms_prefix(axiom_slots);
        let mut candidates = FormulaEnumerator::new(self.signature.clone()).sentences();
        let mut out = Vec::with_capacity(count);
        let mut scanned = 0usize;
        while out.len() < count {
            let p = out.len();
            if (p + 1).is_power_of_two() {
                if let Some(a) = axioms.get((p + 1).trailing_zeros() as usize) {
                    out.push(a.clone());
                    continue;
                }
            }
            if scanned > 2_000_000 {
                break;
            }
            let c = candidates.next().expect("infinite");
            scanned += 1;
            let ok = if self.has_decider() {
                matches!(self.decide(&c, 1_000_000), Ok((v, _)) if v.holds())
            } else {
                let known = (usize::BITS - (p + 1).leading_zeros()) as usize;
                prover::prove(&axioms[..known.min(axioms.len())], &c, STREAM_PROOF_BUDGET).is_some()
            };
            if ok {
                out.push(c);
            }
        }
        out
    }

    /// Codes of the first `budget` theorems of the stream.
    pub fn theorems(&self, budget: usize) -> BTreeSet<BigUint> {
        self.theorem_stream(budget).iter().map(godel).collect()
    }

    /// Numbering of this theory used by the `provable` machine primitive.
    pub fn code(&self) -> BigUint {
        textcode::encode_str(&serde_json::to_string(self).expect("serializable"))
    }

    pub fn from_code(n: &BigUint) -> Option<Rc<Theory>> {
        thread_local! {
            static CACHE: RefCell<HashMap<BigUint, Option<Rc<Theory>>>> = RefCell::new(HashMap::new());
        }
        CACHE.with(|c| {
            if let Some(t) = c.borrow().get(n) {
                return t.clone();
            }
            let t = textcode::decode_str(n).and_then(|s| serde_json::from_str::<Theory>(&s).ok()).map(Rc::new);
            let mut c = c.borrow_mut();
            if c.len() > 256 {
                c.clear();
            }
            c.insert(n.clone(), t.clone());
            t
        })
    }
}

/// Sentences of `sig` in `set`, in order of discovery. Exact sets are listed
/// directly; otherwise the canonical sentence enumeration is dovetailed:
/// stage `b` runs the first `b + 1` candidates for `b` steps each.
fn sentence_members(set: &ReSet, sig: &Signature, count: usize) -> Vec<Formula> {
    if let Some(Decidable::Finite { members }) = &set.decidable {
        return members.iter().filter_map(ungodel).filter(|f| sig.admits(f)).take(count).collect();
    }
    let candidates: Vec<Formula> =
        FormulaEnumerator::new(sig.clone()).sentences().take(AXIOM_SEARCH_BUDGET as usize + 1).collect();
    let mut found = vec![false; candidates.len()];
    let mut out = Vec::new();
    for b in 0..=AXIOM_SEARCH_BUDGET as usize {
        for (k, c) in candidates.iter().enumerate().take(b + 1) {
            if !found[k] && set.index.apply(&[godel(c)], Fuel(b as u64)).halted() {
                found[k] = true;
                out.push(c.clone());
                if out.len() == count {
                    return out;
                }
            }
        }
    }
    out
}

fn janiczak_axioms(spec: &JSpec, count: usize) -> Vec<Formula> {
    let rel = spec.relation.as_str();
    let mut out = vec![janiczak::j1_over(rel)];
    out.extend(spec.extra.iter().map(|b| b.to_formula(rel)));
    let mut seen_pos = BTreeSet::new();
    let mut seen_neg = BTreeSet::new();
    let mut k = 0;
    while out.len() < count {
        for s in spec.positive.found_by_stage(k) {
            if seen_pos.insert(s) {
                out.push(janiczak::axiom_a_over(rel, s));
            }
        }
        for s in spec.negative.found_by_stage(k) {
            if seen_neg.insert(s) {
                out.push(janiczak::axiom_a_over(rel, s).not());
            }
        }
        out.push(janiczak::j2_over(rel, k + 1));
        out.push(janiczak::j3_over(rel, k + 1));
        k += 1;
    }
    out.truncate(count);
    out
}

/// `U ⊕ V`: disjoint union of signatures plus `P`, axioms `P → φ` for
/// theorems of `U` and `¬P → ψ` for theorems of `V`.
pub fn oplus(u: &Theory, v: &Theory) -> Result<Theory> {
    let signature = u.signature.disjoint_union(&v.signature)?.with(P, 0)?;
    Ok(Theory {
        name: format!("({} ⊕ {})", u.name, v.name),
        signature,
        axioms: Axioms::Oplus { left: Box::new(u.clone()), right: Box::new(v.clone()), mode: PMode::Both },
    })
}

/// Work units the `provable` primitive charges per unit of decision work.
const WORK_PER_STEP: u64 = 256;

/// Machine-level provability: `(T ⊢ x, cost)` where `desc` numbers `T`.
///
/// Non-codes give `false`. For theories without a decider only proofs are
/// reported; if none is found within the budget the call does not return.
pub fn provable_by_code(desc: &BigUint, x: &BigUint, budget: u64) -> Option<(bool, u64)> {
    let base = 1 + x.bits() / 8;
    let Some(t) = Theory::from_code(desc) else { return Some((false, base)) };
    let Some(s) = ungodel(x) else { return Some((false, base)) };
    if !t.signature.admits(&s) {
        return Some((false, base));
    }
    let work = budget.saturating_sub(base).saturating_mul(WORK_PER_STEP);
    if t.has_decider() {
        let (v, steps) = t.decide(&s, work).ok()?;
        let cost = base + steps / WORK_PER_STEP;
        (cost <= budget).then_some((v.holds(), cost))
    } else {
        let axioms = t.axioms_prefix(64);
        let steps = prover::prove(&axioms, &s, work)?;
        Some((true, base + steps / WORK_PER_STEP))
    }
}

#[cfg(test)]
mod tests {
    use super::super::syntax::prop;
    use super::*;
    use crate::janiczak::axiom_a_over;

    fn u() -> Theory {
        Theory::janiczak(
            "U",
            "E",
            AtomSet::Decidable { set: Decidable::residues(4, &[0]) },
            AtomSet::Decidable { set: Decidable::residues(4, &[2]) },
            vec![],
        )
    }

    fn v() -> Theory {
        Theory::janiczak("V", "E'", AtomSet::Decidable { set: Decidable::finite([1]) }, AtomSet::empty(), vec![])
    }

    #[test]
    fn literal_theory_decides_atoms() {
        let t = u();
        assert!(t.proves(&janiczak::axiom_a(4)).unwrap());
        assert!(t.proves(&janiczak::axiom_a(2).not()).unwrap());
        assert!(!t.proves(&janiczak::axiom_a(1)).unwrap());
        assert!(!t.proves(&janiczak::axiom_a(1).not()).unwrap());
    }

    #[test]
    fn oplus_case_split() {
        let t = oplus(&u(), &v()).unwrap();
        assert!(t.signature.arity(P) == Some(0) && t.signature.arity("E'") == Some(2));
        let a0 = janiczak::axiom_a(0);
        let b1 = axiom_a_over("E'", 1);
        assert!(t.proves(&prop(P).implies(a0.clone())).unwrap());
        assert!(t.proves(&prop(P).not().implies(b1.clone())).unwrap());
        assert!(!t.proves(&prop(P)).unwrap());
        assert!(!t.proves(&prop(P).not()).unwrap());
        assert!(t.proves(&prop(P).and(a0.clone()).or(prop(P).not().and(b1.clone()))).unwrap());
        // a U-sentence alone holds only on the P side
        assert!(matches!(t.decide(&a0, 1 << 30), Err(Error::Undecidable(_))));
        assert!(oplus(&u(), &u()).is_err());
        assert!(t.with_p(false).unwrap().proves(&b1).unwrap());
    }

    #[test]
    fn theorem_stream_starts_with_axioms() {
        let t = u();
        let s = t.theorem_stream(16);
        assert_eq!(s[0], janiczak::j1());
        assert_eq!(s[1], janiczak::axiom_a(0));
        assert!(s.iter().all(|f| t.proves(f).unwrap()));
        let small = t.theorems(10);
        assert!(small.is_subset(&t.theorems(40)));
    }

    #[test]
    fn descriptor_codes_roundtrip() {
        let t = oplus(&u(), &v()).unwrap();
        let back = Theory::from_code(&t.code()).unwrap();
        assert_eq!(*back, t);
        let x = godel(&prop(P).implies(janiczak::axiom_a(0)));
        assert_eq!(provable_by_code(&t.code(), &x, 1_000_000).map(|r| r.0), Some(true));
        let y = godel(&prop(P));
        assert_eq!(provable_by_code(&t.code(), &y, 1_000_000).map(|r| r.0), Some(false));
    }
}
