//! Filters and ideals of sentences, with closure checks on finite stages.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inseparable::{nucleus_p, nucleus_r};
use crate::logic::enumerate::first_sentences;
use crate::logic::{godel, prover, Formula, Signature, Theory};
use crate::recfun::{Fuel, ReSet};

/// Deduction-upward, `∧`-closed and `⊥`-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSet {
    pub set: ReSet,
    /// A decidable theory whose theorems are exactly the set, for exact membership.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theory: Option<Theory>,
}

/// Deduction-downward, `∨`-closed and `⊤`-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSet {
    pub set: ReSet,
    /// A decidable theory whose refutable sentences are exactly the set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theory: Option<Theory>,
}

/// Limits for one stage check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageLimits {
    /// Candidate sentences scanned for members.
    pub candidates: usize,
    /// Fuel for semi-membership when no decider is attached.
    pub fuel: u64,
    /// Work for each bounded-prover call in the deduction check.
    pub prover_budget: u64,
}

impl Default for StageLimits {
    fn default() -> StageLimits {
        StageLimits { candidates: 24, fuel: 100_000, prover_budget: 2_000 }
    }
}

/// Outcome of the closure checks on one stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub candidates: usize,
    pub members: usize,
    pub pairs_checked: usize,
    pub deductions_checked: usize,
    /// Checks whose membership query did not settle within the fuel.
    pub inconclusive: usize,
    pub failures: Vec<String>,
}

impl StageReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Filter,
    Ideal,
}

fn member(set: &ReSet, theory: Option<&Theory>, kind: Kind, s: &Formula, fuel: u64) -> Result<Option<bool>> {
    if let Some(t) = theory {
        let goal = match kind {
            Kind::Filter => s.clone(),
            Kind::Ideal => s.clone().not(),
        };
        match t.proves(&goal) {
            Ok(b) => return Ok(Some(b)),
            Err(Error::Undecidable(_) | Error::OutOfFuel(_) | Error::Resource(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(set.semi_contains(&godel(s), Fuel(fuel)))
}

fn check_stage(
    set: &ReSet,
    theory: Option<&Theory>,
    kind: Kind,
    signature: &Signature,
    limits: StageLimits,
) -> Result<StageReport> {
    let candidates = first_sentences(signature, limits.candidates);
    let mut report = StageReport {
        candidates: candidates.len(),
        members: 0,
        pairs_checked: 0,
        deductions_checked: 0,
        inconclusive: 0,
        failures: vec![],
    };
    let is_member = |s: &Formula| member(set, theory, kind, s, limits.fuel);
    let mut stage = Vec::new();
    for c in &candidates {
        if is_member(c)? == Some(true) {
            stage.push(c.clone());
        }
    }
    report.members = stage.len();

    let (absent, name) = match kind {
        Kind::Filter => (Formula::False, "⊥"),
        Kind::Ideal => (Formula::True, "⊤"),
    };
    if is_member(&absent)? == Some(true) {
        report.failures.push(format!("{name} is a member"));
    }

    // expect `Some(true)`; `None` means the semi-decision did not settle
    let expect = |s: Formula, why: String, report: &mut StageReport| -> Result<()> {
        match is_member(&s)? {
            Some(true) => {}
            Some(false) => report.failures.push(format!("{s} missing: {why}")),
            None => report.inconclusive += 1,
        }
        Ok(())
    };
    for (a, x) in stage.iter().enumerate() {
        for y in &stage[a..] {
            let (combined, op) = match kind {
                Kind::Filter => (x.clone().and(y.clone()), "∧"),
                Kind::Ideal => (x.clone().or(y.clone()), "∨"),
            };
            report.pairs_checked += 1;
            expect(combined, format!("{op}-closure of {x} and {y}"), &mut report)?;
        }
    }
    for x in &stage {
        for y in &candidates {
            let (premise, goal) = match kind {
                Kind::Filter => (x, y),
                Kind::Ideal => (y, x),
            };
            if prover::prove(std::slice::from_ref(premise), goal, limits.prover_budget).is_some() {
                report.deductions_checked += 1;
                expect(y.clone(), format!("{premise} ⊢ {goal}"), &mut report)?;
            }
        }
    }
    Ok(report)
}

impl FilterSet {
    /// The theorems of a decidable theory.
    pub fn of_theory(theory: &Theory) -> FilterSet {
        FilterSet { set: nucleus_p(theory), theory: Some(theory.clone()) }
    }

    pub fn contains(&self, s: &Formula, fuel: u64) -> Result<Option<bool>> {
        member(&self.set, self.theory.as_ref(), Kind::Filter, s, fuel)
    }

    /// Closure checks on the members among the first candidate sentences.
    pub fn check_stage(&self, signature: &Signature, limits: StageLimits) -> Result<StageReport> {
        check_stage(&self.set, self.theory.as_ref(), Kind::Filter, signature, limits)
    }
}

impl IdealSet {
    /// The refutable sentences of a decidable theory.
    pub fn of_theory(theory: &Theory) -> IdealSet {
        IdealSet { set: nucleus_r(theory), theory: Some(theory.clone()) }
    }

    pub fn contains(&self, s: &Formula, fuel: u64) -> Result<Option<bool>> {
        member(&self.set, self.theory.as_ref(), Kind::Ideal, s, fuel)
    }

    /// Closure checks on the members among the first candidate sentences.
    pub fn check_stage(&self, signature: &Signature, limits: StageLimits) -> Result<StageReport> {
        check_stage(&self.set, self.theory.as_ref(), Kind::Ideal, signature, limits)
    }
}
