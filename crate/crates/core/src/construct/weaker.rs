//! `T = U ⊕ V`: an EI theory strictly weaker than `U` in interpretability,
//! with its witnesses and an instance replay of why no translation works.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::eet::{eet_from_tei, tei_from_eet};
use super::race::{delayed_constant, tei_witness_index, tei_witness_oplus, RaceCase, RaceOutcome};
use super::vbuild::{build_v, VBuild, E_PRIME};
use super::xbuild::{profile_literals, TRecord, XBuild, XConfig};
use crate::error::{Error, Result};
use crate::inseparable::{nucleus_p, nucleus_r, oplus_semi_reduction, SemiReduction};
use crate::janiczak::{atom_map, axiom_a_over, consistent, decide_comb, BoolComb, Decision, E};
use crate::logic::{godel, oplus, prop, ungodel, Axioms, Formula, JSpec, Theory, Verdict, P};
use crate::recfun::{Fuel, Index};
use crate::verify::{Method, Verification};

/// Steps before the instance witnesses answer in case-(a) races.
pub const FAST_DELAY: u64 = 4;
/// Steps before the instance witnesses answer when a meet should win.
pub const SLOW_DELAY: u64 = 100_000;
/// Stage limit of the race.
pub const RACE_STAGES: u64 = 24;
/// Fuel for running a witness to completion.
pub const WITNESS_FUEL: u64 = 50_000_000;

/// A decidable subject with a tEI witness valid on the instances it is used on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubjectCertificate {
    pub theory: Theory,
    /// Binary witness; in these instances it answers with `⌜A_1⌝` over the subject's relation.
    pub tei_witness: Index,
    /// Semi-reduction map `n ↦ ⌜A_n⌝` from the source pair into the subject.
    pub semi_reduction: Index,
}

impl SubjectCertificate {
    /// A Janiczak subject over `E` leaving `A_1` open.
    pub fn janiczak(theory: Theory) -> Result<SubjectCertificate> {
        let spec = jspec(&theory)?;
        if spec.relation != E {
            return Err(Error::Input(format!("the subject must be over {E}, not {}", spec.relation)));
        }
        if spec.literal(1)?.is_some() || spec.extra.iter().any(|b| b.atoms.contains(&1)) {
            return Err(Error::Input("the subject must leave A1 open".into()));
        }
        Ok(SubjectCertificate {
            tei_witness: delayed_constant(&godel(&axiom_a_over(E, 1)), SLOW_DELAY),
            semi_reduction: atom_map(E),
            theory,
        })
    }
}

fn jspec(t: &Theory) -> Result<&JSpec> {
    match &t.axioms {
        Axioms::Janiczak(spec) => Ok(spec),
        _ => Err(Error::Input(format!("{} is not a Janiczak theory", t.name))),
    }
}

/// The same Janiczak theory with extra axioms.
fn with_extra(t: &Theory, extra: &[BoolComb], name: &str) -> Result<Theory> {
    let mut out = t.clone();
    match &mut out.axioms {
        Axioms::Janiczak(spec) => spec.extra.extend(extra.iter().cloned()),
        _ => return Err(Error::Input(format!("{} is not a Janiczak theory", t.name))),
    }
    out.name = name.to_string();
    Ok(out)
}

/// The result of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weaker {
    pub subject: SubjectCertificate,
    pub v: VBuild,
    /// `T = U ⊕ V`.
    pub theory: Theory,
    /// `g(n) = (P → f₁(n)) ∧ (¬P → f₂(n))`.
    pub semi_reduction: SemiReduction,
    /// The staged binary witness for `T`.
    pub tei_witness: Index,
    pub f_prefix: Vec<u64>,
    pub records: Vec<TRecord>,
}

/// Builds `X`, `V` and `T = U ⊕ V` over the subject, with both witnesses.
pub fn weaker_theory(subject: SubjectCertificate, config: XConfig) -> Result<(Weaker, XBuild)> {
    let mut x = XBuild::new(subject.theory.clone(), config);
    let v = build_v(&mut x)?;
    let theory = oplus(&subject.theory, &v.theory)?;
    let f1 = SemiReduction::new(subject.semi_reduction.clone(), v.pair.clone(), subject.theory.clone());
    let f2 = SemiReduction::new(atom_map(E_PRIME), v.pair.clone(), v.theory.clone());
    let semi_reduction = oplus_semi_reduction(&f1, &f2)?;
    let tei_witness = tei_witness_index(&subject.tei_witness, &v.witness, &theory.signature);
    let w = Weaker {
        f_prefix: v.f_prefix.clone(),
        records: x.records().to_vec(),
        subject,
        v,
        theory,
        semi_reduction,
        tei_witness,
    };
    Ok((w, x))
}

/// One replay of the contradiction: a theorem `φ` of `U`, a profile `j*` of
/// the atoms below `F(n*) + 1` that `V` admits, and an extension `k` refuting
/// the translation of `φ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceInstance {
    pub n_star: usize,
    pub translation: String,
    pub j_star: u64,
    pub m: usize,
    pub phi: String,
    pub normal_form: String,
    /// `F(n* + 1)`.
    pub bound: u64,
    pub k: Option<u64>,
    pub claims: Vec<Verification>,
}

impl EvidenceInstance {
    pub fn holds(&self) -> bool {
        self.claims.iter().all(|c| c.result)
    }
}

/// Literal axioms of a Janiczak theory restricted to atoms below `n`,
/// combined with the profile `C_{n,j}`; `None` if they clash.
fn profile_fits(spec: &JSpec, n: usize, j: u64) -> Result<bool> {
    for s in 0..n {
        if let Some(b) = spec.literal(s)? {
            if b != (j >> s & 1 == 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn profile_comb(n: usize, j: u64) -> Result<BoolComb> {
    (0..n).try_fold(BoolComb::constant(true), |acc, s| acc.and(&BoolComb::literal(s, j >> s & 1 == 1)))
}

/// Replays the three claims for every `n* < depth` and every profile `j*`
/// consistent with `V`, up to `limit` instances.
pub fn evidence_bundle(x: &mut XBuild, v: &VBuild, limit: usize) -> Result<Vec<EvidenceInstance>> {
    let depth = x.config.depth;
    let prefix = x.x_prefix(depth)?;
    let vspec = jspec(&v.theory)?.clone();
    let mut out = Vec::new();
    for n_star in 0..depth {
        let n = prefix[n_star] as usize + 1;
        let bound = prefix[n_star + 1];
        let width = usize::try_from(bound).map_err(|_| Error::Resource("F overflow".into()))?;
        for j in 0..1u64 << n {
            if out.len() >= limit {
                return Ok(out);
            }
            if !profile_fits(&vspec, n, j)? {
                continue;
            }
            let (m, nf) = x.least_m(n, n_star, j)?;
            let phi = x.theorem(m).expect("found by the search");
            let tau = x.translation(n_star);
            let mut claims = Vec::new();
            claims.push(Verification::new("U proves phi", Method::Decider, x.subject.proves(&phi)?));
            let open = matches!(decide_comb(&[], &profile_literals(n, j), &nf)?, Decision::NotProvable { .. });
            claims.push(Verification::new("J + C(n, j*) does not prove the translation", Method::Decider, open));
            claims.push(
                Verification::new(
                    "every atom of the normal form lies below F(n*+1)",
                    Method::Exact,
                    nf.t() as u64 <= bound,
                )
                .with_detail(format!("t = {}", nf.t())),
            );
            let refute = nf.not();
            let mut k_found = None;
            for k in (0..1u64 << width).filter(|k| k & ((1 << n) - 1) == j) {
                if decide_comb(&[], &profile_literals(width, k), &refute)?.is_provable() {
                    k_found = Some(k);
                    break;
                }
            }
            claims.push(Verification::new(
                "some k extending j* has J + C(F(n*+1), k) proving the negated translation",
                Method::Decider,
                k_found.is_some(),
            ));
            let fits = match k_found {
                Some(k) => {
                    let lit = |s: usize| vspec.literal(s);
                    consistent(&[profile_comb(width, k)?], &lit)?
                }
                None => false,
            };
            claims.push(Verification::new("C(F(n*+1), k) is consistent with V", Method::Decider, fits));
            out.push(EvidenceInstance {
                n_star,
                translation: serde_json::to_string(&tau).expect("serializable"),
                j_star: j,
                m,
                phi: phi.to_string(),
                normal_form: nf.describe(),
                bound,
                k: k_found,
                claims,
            });
        }
    }
    Ok(out)
}

/// Exactly decided independence of `s` from `theory`.
pub fn independent(theory: &Theory, s: &Formula) -> Result<bool> {
    let open = |f: &Formula| -> Result<bool> {
        Ok(matches!(theory.decide(f, crate::janiczak::DEFAULT_BUDGET)?.0, Verdict::NotProvable { .. }))
    };
    Ok(open(s)? && open(&s.clone().not())?)
}

/// Structural and semantic checks of the pipeline output.
pub fn witness_checks(w: &Weaker, sample: usize) -> Result<Vec<Verification>> {
    let mut out = Vec::new();
    let expected = w.subject.theory.signature.disjoint_union(&w.v.theory.signature)?.with(P, 0)?;
    out.push(Verification::new("signature of T is that of U, E' and P", Method::Exact, w.theory.signature == expected));
    let stream = w.subject.theory.theorem_stream(sample);
    let mut all = true;
    for phi in &stream {
        all &= w.theory.proves(&prop(P).implies(phi.clone()))?;
    }
    out.push(
        Verification::new("T proves P -> phi for sampled theorems of U", Method::Decider, all)
            .with_detail(format!("{} theorems", stream.len())),
    );
    out.push(Verification::new(
        "sampled axioms of V are consistent",
        Method::Decider,
        w.v.axioms_consistent(8, crate::janiczak::DEFAULT_BUDGET)?,
    ));
    let spec = jspec(&w.v.theory)?;
    let mut lands = true;
    let mut tried = 0;
    for &x in &w.f_prefix {
        let Some(right) = spec.literal(x as usize)?.map(|b| !b) else { continue };
        tried += 1;
        let n = BigUint::from(x);
        lands &= w.semi_reduction.lands(&n, right, Fuel(100_000))?;
        lands &= !w.semi_reduction.lands(&n, !right, Fuel(100_000))?;
    }
    out.push(
        Verification::new("g sends Y into T_P and Z into T_R", Method::Decider, lands && tried > 0)
            .with_detail(format!("{tried} members of Y and Z below F(depth)")),
    );
    let budget = 40;
    let in_x = |y: &BigUint| y.to_u64().is_some_and(|y| w.f_prefix.contains(&y));
    let inside = [&w.v.pair.left, &w.v.pair.right].iter().all(|side| side.enumerate(budget).iter().all(in_x));
    out.push(Verification::new("Y and Z lie inside X", Method::ToBudget(budget), inside));
    Ok(out)
}

/// A consistent extension `S` of `T` on which the staged witness is run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaceInstance {
    pub name: String,
    pub extension: Theory,
    pub expected: RaceCase,
    pub w1: Index,
    pub w2: Index,
}

/// Outcome of one race, checked against the stage semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaceCheck {
    pub name: String,
    pub expected: RaceCase,
    pub outcome: RaceOutcome,
    pub sentence: String,
    pub checks: Vec<Verification>,
}

impl RaceCheck {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.result)
    }
}

/// Ten extensions of `T` covering the three cases of the race.
pub fn race_instances(w: &Weaker) -> Result<Vec<RaceInstance>> {
    let u = &w.subject.theory;
    let v = &w.v.theory;
    let a_u = godel(&axiom_a_over(E, 1));
    let a_v = godel(&axiom_a_over(E_PRIME, 1));
    let extras: [(&str, Vec<BoolComb>, Vec<BoolComb>); 4] = [
        ("", vec![], vec![]),
        ("+A3", vec![BoolComb::atom(3)], vec![]),
        ("+~A'3", vec![], vec![BoolComb::literal(3, false)]),
        ("+A5|A7", vec![BoolComb::atom(5).or(&BoolComb::atom(7))?], vec![BoolComb::atom(3)]),
    ];
    let plan: [(usize, Option<bool>, RaceCase, u64); 10] = [
        (0, Some(false), RaceCase::B, SLOW_DELAY),
        (1, Some(false), RaceCase::B, SLOW_DELAY),
        (2, Some(false), RaceCase::B, SLOW_DELAY),
        (0, Some(true), RaceCase::C, SLOW_DELAY),
        (1, Some(true), RaceCase::C, SLOW_DELAY),
        (3, Some(true), RaceCase::C, SLOW_DELAY),
        (0, None, RaceCase::A, FAST_DELAY),
        (2, None, RaceCase::A, FAST_DELAY),
        (3, None, RaceCase::A, FAST_DELAY),
        (1, Some(true), RaceCase::A, FAST_DELAY),
    ];
    plan.iter()
        .map(|&(e, p, expected, delay)| {
            let (tag, eu, ev) = &extras[e];
            let base = oplus(&with_extra(u, eu, &format!("{}{tag}", u.name))?, &with_extra(v, ev, &v.name)?)?;
            let extension = match p {
                Some(b) => base.with_p(b)?,
                None => base,
            };
            Ok(RaceInstance {
                name: extension.name.clone(),
                extension,
                expected,
                w1: delayed_constant(&a_u, delay),
                w2: delayed_constant(&a_v, delay),
            })
        })
        .collect()
}

fn sentence_of(code: &BigUint) -> Result<Formula> {
    ungodel(code).ok_or_else(|| Error::Input("witness output is not a sentence code".into()))
}

/// Runs the machine witness and the stage-by-stage mirror on `S`'s nuclei.
pub fn run_race(inst: &RaceInstance) -> Result<RaceCheck> {
    let s = &inst.extension;
    let (i, j) = (nucleus_p(s).index, nucleus_r(s).index);
    let outcome = tei_witness_oplus(&i, &j, &inst.w1, &inst.w2, &s.signature, RACE_STAGES, Fuel(WITNESS_FUEL))?;
    let g = tei_witness_index(&inst.w1, &inst.w2, &s.signature);
    let machine = g.apply(&[i.index.clone(), j.index.clone()], Fuel(WITNESS_FUEL));
    let sentence = sentence_of(&outcome.sentence)?;
    let checks = vec![
        Verification::new(
            "machine witness agrees with the stage semantics",
            Method::ToBudget(WITNESS_FUEL),
            machine.value() == Some(&outcome.sentence),
        ),
        Verification::new("selected case is the expected one", Method::Exact, outcome.case == inst.expected),
        Verification::new("output lies outside S_P and S_R", Method::Decider, independent(s, &sentence)?),
    ];
    Ok(RaceCheck { name: inst.name.clone(), expected: inst.expected, sentence: sentence.to_string(), outcome, checks })
}

fn independent_output(s: &Theory, out: Option<&BigUint>) -> Result<bool> {
    match out {
        Some(c) => independent(s, &sentence_of(c)?),
        None => Ok(false),
    }
}

/// `eet_from_tei(g)` at the index of `S`'s theorems yields a sentence
/// independent of `S`.
pub fn eet_check(inst: &RaceInstance) -> Result<Verification> {
    let s = &inst.extension;
    let g = tei_witness_index(&inst.w1, &inst.w2, &s.signature);
    let i = nucleus_p(s).index;
    let out = eet_from_tei(&g).apply(std::slice::from_ref(&i.index), Fuel(WITNESS_FUEL));
    let ok = independent_output(s, out.value())?;
    Ok(Verification::new(
        format!("{}: eet_from_tei(g) gives a sentence independent of S", inst.name),
        Method::Decider,
        ok,
    ))
}

/// The round trip `tei_from_eet(eet_from_tei(g))` at `S`'s nuclei yields a
/// sentence independent of `S`.
pub fn round_trip_check(inst: &RaceInstance) -> Result<Verification> {
    let s = &inst.extension;
    let g = tei_witness_index(&inst.w1, &inst.w2, &s.signature);
    let (i, j) = (nucleus_p(s).index, nucleus_r(s).index);
    let back = tei_from_eet(&eet_from_tei(&g));
    let out = back.apply(&[i.index.clone(), j.index.clone()], Fuel(WITNESS_FUEL));
    let ok = independent_output(s, out.value())?;
    Ok(Verification::new(
        format!("{}: tei_from_eet(eet_from_tei(g)) gives a sentence independent of S", inst.name),
        Method::Decider,
        ok,
    ))
}
