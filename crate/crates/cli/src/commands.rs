//! One function per subcommand, each returning its certificate.

use std::collections::BTreeMap;
use std::path::Path;

use insep::construct::race::RaceCase;
use insep::construct::vbuild::{build_v, VBuild};
use insep::construct::weaker::{
    eet_check, evidence_bundle, race_instances, round_trip_check, run_race, weaker_theory, witness_checks,
    EvidenceInstance, SubjectCertificate, Weaker,
};
use insep::construct::xbuild::{XBuild, XConfig, DEPTH_ENV};
use insep::inseparable::{check_contract, k_pair, pushforward, transported_witness, ContractCheck};
use insep::janiczak::{self, atom_map, decide, eval, normal_form, profiles, required_bound, Decision, SizeProfile, E};
use insep::logic::{
    enumerate_translations, godel, oplus, parse_sentence, prop, ungodel, Axioms, Formula, Theory, Translation, P,
};
use insep::recfun::{constant_program, fixed_point, fixed_point_agrees, smn, smn_agrees, Asm, Fuel, Index, PrimOp};
use insep::verify::{Method, Verification};
use insep::{Error, Result};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cert::{json, Certificate};
use crate::input;
use crate::ProgramArg;

fn big(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

// ---- recfun ----

pub fn recfun_run(prog: &ProgramArg, args: &str, fuel: u64) -> Result<Certificate> {
    let (index, inline) = input::program(prog)?;
    let argv = input::nats(args)?;
    let program = index.program();
    if argv.len() != program.arity {
        return Err(Error::Input(format!("program takes {} arguments, got {}", program.arity, argv.len())));
    }
    let out = index.apply(&argv, Fuel(fuel));
    let again = index.apply(&argv, Fuel(fuel.saturating_mul(2)));
    let stable = !out.halted() || again == out;
    Ok(Certificate::new(
        "recfun run",
        json!({ "program": inline, "args": argv.iter().map(big).collect::<Vec<_>>(), "fuel": fuel }),
        json!({ "outcome": json(&out) }),
        vec![Verification::new("a halted run keeps its value under twice the fuel", Method::Exact, stable)],
    ))
}

pub fn recfun_smn(prog: &ProgramArg, fixed: &str, samples: usize, fuel: u64, seed: u64) -> Result<Certificate> {
    let (index, inline) = input::program(prog)?;
    let fixed = input::nats(fixed)?;
    let arity = index.program().arity;
    if fixed.len() > arity {
        return Err(Error::Input(format!("program takes {arity} arguments, {} fixed", fixed.len())));
    }
    let spec = smn(&index, &fixed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let ys: Vec<BigUint> = (0..arity - fixed.len()).map(|_| BigUint::from(rng.gen_range(0u32..20))).collect();
        if !smn_agrees(&index, &fixed, &ys, Fuel(fuel)) {
            mismatches.push(ys.iter().map(big).collect::<Vec<_>>());
        }
    }
    let check = Verification::new(
        format!("both sides agree on {samples} random argument tuples"),
        Method::ToBudget(fuel),
        mismatches.is_empty(),
    );
    Ok(Certificate::new(
        "recfun smn",
        json!({ "program": inline, "fixed": fixed.iter().map(big).collect::<Vec<_>>(), "samples": samples, "fuel": fuel, "seed": seed }),
        json!({ "index": json(&spec), "arity": arity - fixed.len(), "mismatches": mismatches }),
        vec![check],
    ))
}

pub fn recfun_fix(prog: &ProgramArg, arity: usize, fuel: u64) -> Result<Certificate> {
    let (t, inline) = input::program(prog)?;
    if t.program().arity != 1 {
        return Err(Error::Input("the transform must take one argument".into()));
    }
    let n = fixed_point(&t, arity);
    let samples: Vec<Vec<BigUint>> =
        if arity == 0 { vec![vec![]] } else { (0..10u32).map(|x| vec![BigUint::from(x); arity]).collect() };
    let bad: Vec<usize> =
        (0..samples.len()).filter(|&k| !fixed_point_agrees(&t, &n, &samples[k], Fuel(fuel))).collect();
    let check = Verification::new(
        format!("phi_n and phi_(phi_t(n)) agree on {} argument tuples", samples.len()),
        Method::ToBudget(fuel),
        bad.is_empty(),
    );
    Ok(Certificate::new(
        "recfun fix",
        json!({ "transform": inline, "arity": arity, "fuel": fuel }),
        json!({ "index": json(&n) }),
        vec![check],
    ))
}

// ---- pairs ----

pub fn pairs_k(budget: u64) -> Result<Certificate> {
    let pair = k_pair();
    let overlap = pair.overlap_at(budget);
    let zero = constant_program(1, 0u32);
    let one = constant_program(1, 1u32);
    let fuel = Fuel(100_000);
    let checks = vec![
        Verification::new(
            "no element is enumerated into both components",
            Method::ToBudget(budget),
            overlap.is_empty(),
        ),
        Verification::new(
            "the constant-0 program lies in the left component",
            Method::ToBudget(fuel.0),
            pair.left.semi_contains(&zero.index, fuel) == Some(true),
        ),
        Verification::new(
            "the constant-1 program lies in the right component",
            Method::ToBudget(fuel.0),
            pair.right.semi_contains(&one.index, fuel) == Some(true),
        ),
    ];
    Ok(Certificate::new(
        "pairs k",
        json!({ "budget": budget }),
        json!({ "pair": pair.name, "left": json(&pair.left.index), "right": json(&pair.right.index), "witness": json(&pair.witness) }),
        checks,
    ))
}

fn doubling() -> Index {
    let mut asm = Asm::new(1);
    let r = asm.reg();
    asm.prim(r, PrimOp::Add, &[0, 0]);
    asm.halt(r);
    Index::of(&asm.finish())
}

pub fn pairs_witness(wi: &str, wj: &str, double: bool, fuel: u64) -> Result<Certificate> {
    let (wi_set, wj_set) = (input::decidable(wi)?, input::decidable(wj)?);
    let pair = if double { pushforward(&k_pair(), &doubling())? } else { k_pair() };
    let contract = check_contract(&pair, &wi_set, &wj_set, Fuel(fuel))?;
    let (value, check) = match &contract {
        ContractCheck::Avoided { value } => {
            (value, Verification::new("the witness value lies outside W_i and W_j", Method::Exact, true))
        }
        ContractCheck::PreconditionRefuted { value, reason } => (
            value,
            Verification::new(
                "the value exhibits a failed hypothesis, so no avoidance is claimed",
                Method::Exact,
                true,
            )
            .with_detail(reason.clone()),
        ),
        ContractCheck::Violated { value, reason } => (
            value,
            Verification::new("the witness value lies outside W_i and W_j", Method::Exact, false)
                .with_detail(reason.clone()),
        ),
        ContractCheck::Inconclusive { value } => {
            return Err(Error::OutOfFuel(format!(
                "membership of the traced point behind {value} unsettled with fuel {fuel}"
            )))
        }
    };
    Ok(Certificate::new(
        "pairs witness",
        json!({ "wi": json(&wi_set), "wj": json(&wj_set), "double": double, "fuel": fuel }),
        json!({
            "pair": pair.name,
            "i": json(&wi_set.semi_decider()),
            "j": json(&wj_set.semi_decider()),
            "witness_value": big(value),
            "contract": json(&contract),
        }),
        vec![check],
    ))
}

// ---- logic ----

pub fn logic_parse(sentence: &str) -> Result<Certificate> {
    let f = parse_sentence(sentence)?;
    let printed = f.to_string();
    let code = godel(&f);
    let reparsed = parse_sentence(&printed)?;
    let rels: BTreeMap<String, usize> = f.relations().into_iter().collect();
    Ok(Certificate::new(
        "logic parse",
        json!({ "sentence": sentence }),
        json!({ "printed": printed, "code": big(&code), "rank": f.rank(), "size": f.size(), "relations": rels }),
        vec![
            Verification::new("printing and parsing again gives the same formula", Method::Exact, reparsed == f),
            Verification::new(
                "decoding the code gives the same formula",
                Method::Exact,
                ungodel(&code).as_ref() == Some(&f),
            ),
        ],
    ))
}

pub fn logic_translate(
    sentence: &str,
    source: &str,
    target: &str,
    position: Option<usize>,
    file: Option<&Path>,
) -> Result<Certificate> {
    let f = parse_sentence(sentence)?;
    let (src, dst) = (input::signature(source)?, input::signature(target)?);
    src.check(&f)?;
    let tau: Translation = match (position, file) {
        (_, Some(p)) => {
            serde_json::from_str(&input::read(p)?).map_err(|e| Error::Input(format!("translation JSON: {e}")))?
        }
        (Some(k), None) => {
            enumerate_translations(&src, &dst, k + 1).pop().ok_or_else(|| Error::Input("no translations".into()))?
        }
        (None, None) => return Err(Error::Input("give --position or --translation".into())),
    };
    tau.check(&src, &dst)?;
    let image = insep::logic::apply_translation(&f, &tau)?;
    Ok(Certificate::new(
        "logic translate",
        json!({ "sentence": sentence, "source": json(&src), "target": json(&dst), "translation": json(&tau) }),
        json!({ "translated": image.to_string() }),
        vec![Verification::new(
            "the image is a sentence over the target signature",
            Method::Exact,
            dst.admits(&image) && image.is_sentence(),
        )],
    ))
}

pub fn logic_oplus(left: &str, right: &str, sample: usize) -> Result<Certificate> {
    let (u, v) = (input::theory(left)?, input::theory(right)?);
    let t = oplus(&u, &v)?;
    let expected = u.signature.disjoint_union(&v.signature)?.with(P, 0)?;
    let mut checks =
        vec![Verification::new("the signature is the disjoint union plus P", Method::Exact, t.signature == expected)];
    if t.has_decider() {
        let mut ok = true;
        for phi in u.theorem_stream(sample) {
            ok &= t.proves(&prop(P).implies(phi))?;
        }
        for psi in v.theorem_stream(sample) {
            ok &= t.proves(&prop(P).not().implies(psi))?;
        }
        checks.push(Verification::new(
            "P -> phi and ~P -> psi hold for sampled theorems of each side",
            Method::Decider,
            ok,
        ));
    }
    Ok(Certificate::new(
        "logic oplus",
        json!({ "left": json(&u), "right": json(&v), "sample": sample }),
        json!({ "theory": json(&t) }),
        checks,
    ))
}

pub fn logic_theorems(theory: &str, count: usize) -> Result<Certificate> {
    let t = input::theory(theory)?;
    let stream = t.theorem_stream(count);
    let longer = t.theorem_stream(count + 4);
    let mut checks = vec![Verification::new(
        "the enumeration is monotone in the budget",
        Method::Exact,
        longer.starts_with(&stream),
    )];
    if t.has_decider() {
        let mut ok = true;
        for s in &stream {
            ok &= t.proves(s)?;
        }
        checks.push(Verification::new("every listed sentence is a theorem", Method::Decider, ok));
    }
    let listed: Vec<Value> =
        stream.iter().map(|s| json!({ "sentence": s.to_string(), "code": big(&godel(s)) })).collect();
    Ok(Certificate::new(
        "logic theorems",
        json!({ "theory": json(&t), "count": count }),
        json!({ "theorems": listed }),
        checks,
    ))
}

// ---- janiczak ----

/// The profile extended by absent sizes up to `bound`.
fn widen(p: &SizeProfile, bound: usize) -> Result<SizeProfile> {
    SizeProfile::new(p.bound.max(bound), p.present.iter().copied())
}

pub fn janiczak_decide(sentence: &str, context: Option<&Path>) -> Result<Certificate> {
    let s = parse_sentence(sentence)?;
    let ctx: Vec<Formula> = match context {
        Some(p) => input::sentences(p)?,
        None => vec![],
    };
    let ctx_nf = ctx.iter().map(normal_form).collect::<Result<Vec<_>>>()?;
    let nf = normal_form(&s)?;
    let verdict = decide(&ctx_nf, &s)?;
    let check = match &verdict {
        Decision::NotProvable { countermodel } => {
            let need = ctx.iter().chain([&s]).map(|f| required_bound(f.rank())).max().unwrap_or(1);
            let p = widen(countermodel, need)?;
            let mut ok = !eval(&s, &p)?;
            for c in &ctx {
                ok &= eval(c, &p)?;
            }
            Verification::new("the countermodel satisfies the context and falsifies the sentence", Method::Exact, ok)
        }
        Decision::Provable => {
            let eq = s.clone().iff(nf.to_formula(E));
            Verification::new(
                "the sentence is equivalent to its normal form",
                Method::Decider,
                decide(&[], &eq)?.is_provable(),
            )
        }
        Decision::Inconsistent => Verification::new(
            "the context has no model",
            Method::Decider,
            !janiczak::consistent(&ctx_nf, &|_| Ok(None))?,
        ),
    };
    Ok(Certificate::new(
        "janiczak decide",
        json!({ "sentence": sentence, "context": ctx.iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
        json!({ "verdict": json(&verdict), "normal_form": nf.describe() }),
        vec![check],
    ))
}

pub fn janiczak_nf(sentence: &str) -> Result<Certificate> {
    let s = parse_sentence(sentence)?;
    let nf = normal_form(&s)?;
    let as_formula = nf.to_formula(E);
    let eq = s.clone().iff(as_formula.clone());
    Ok(Certificate::new(
        "janiczak nf",
        json!({ "sentence": sentence }),
        json!({ "normal_form": json(&nf), "described": nf.describe(), "formula": as_formula.to_string(), "t": nf.t() }),
        vec![Verification::new(
            "J proves the sentence equivalent to its normal form",
            Method::Decider,
            decide(&[], &eq)?.is_provable(),
        )],
    ))
}

pub fn janiczak_profiles(bound: usize) -> Result<Certificate> {
    let ps = profiles(bound)?;
    let distinct: std::collections::BTreeSet<&SizeProfile> = ps.iter().collect();
    Ok(Certificate::new(
        "janiczak profiles",
        json!({ "bound": bound }),
        json!({ "profiles": json(&ps) }),
        vec![Verification::new(
            format!("2^{bound} distinct profiles"),
            Method::Exact,
            ps.len() == 1 << bound && distinct.len() == ps.len(),
        )],
    ))
}

// ---- construct ----

fn config(depth: usize) -> Result<XConfig> {
    if let Ok(cap) = std::env::var(DEPTH_ENV) {
        let cap: usize =
            cap.trim().parse().map_err(|_| Error::Input(format!("{DEPTH_ENV} must be a natural number")))?;
        if depth > cap {
            return Err(Error::Resource(format!("depth {depth} exceeds {DEPTH_ENV}={cap}")));
        }
    }
    Ok(XConfig { depth, ..XConfig::default() })
}

const CHI_FUEL: u64 = 1_000_000;

fn x_checks(x: &XBuild, prefix: &[u64]) -> Vec<Verification> {
    let gaps = prefix.windows(2).all(|w| w[1] >= w[0] + 2);
    let last = *prefix.last().expect("F(0) is always computed");
    let chi = x.x_index();
    let (mut wrong, mut unsettled) = (Vec::new(), Vec::new());
    for n in 0..=last {
        let want = BigUint::from(u32::from(prefix.contains(&n)));
        match chi.apply(&[BigUint::from(n)], Fuel(CHI_FUEL)).value() {
            Some(v) if *v == want => {}
            Some(_) => wrong.push(n),
            None => unsettled.push(n),
        }
    }
    let mut agree = Verification::new(
        "the characteristic program of X never disagrees with the prefix",
        Method::ToBudget(CHI_FUEL),
        wrong.is_empty(),
    );
    if !wrong.is_empty() || !unsettled.is_empty() {
        agree = agree.with_detail(format!("disagrees at {wrong:?}; unsettled at {unsettled:?}"));
    }
    vec![
        Verification::new("F(0) = 0", Method::Exact, prefix[0] == 0),
        Verification::new("F(k+1) >= F(k) + 2 on the computed prefix", Method::Exact, gaps),
        agree,
    ]
}

fn evidence_checks(bundle: &[EvidenceInstance]) -> Vec<Verification> {
    bundle
        .iter()
        .flat_map(|inst| {
            inst.claims.iter().map(move |c| {
                let mut c = c.clone();
                c.claim = format!("n*={} j*={}: {}", inst.n_star, inst.j_star, c.claim);
                c
            })
        })
        .collect()
}

fn construct_outputs(prefix: &[u64], x: &XBuild, bundle: &[EvidenceInstance], checks: &[Verification]) -> Value {
    json!({
        "F_prefix": prefix,
        "golden_t_values": json(&x.records()),
        "evidence_bundle": json(&bundle),
        "witness_checks": json(&checks),
    })
}

const EVIDENCE_LIMIT: usize = 16;

pub fn construct_build_x(depth: usize, subject: Option<&str>) -> Result<Certificate> {
    let cfg = config(depth)?;
    let u = input::subject(subject)?;
    let mut x = XBuild::new(u.clone(), cfg);
    let prefix = x.x_prefix(depth)?;
    let bundle = if depth >= 1 {
        let v = build_v(&mut x)?;
        evidence_bundle(&mut x, &v, EVIDENCE_LIMIT)?
    } else {
        vec![]
    };
    let checks = x_checks(&x, &prefix);
    let mut all = checks.clone();
    all.extend(evidence_checks(&bundle));
    Ok(Certificate::new(
        "construct build-x",
        json!({ "depth": depth, "subject": json(&u) }),
        construct_outputs(&prefix, &x, &bundle, &checks),
        all,
    ))
}

fn v_checks(v: &VBuild, prefix: &[u64]) -> Result<Vec<Verification>> {
    let spec = match &v.theory.axioms {
        Axioms::Janiczak(s) => s,
        _ => unreachable!("V is a Janiczak theory"),
    };
    let mut literals = BTreeMap::new();
    for &x in prefix {
        literals.insert(x, spec.literal(x as usize)?);
    }
    let budget = 40;
    let in_x = |y: &BigUint| prefix.iter().any(|&f| BigUint::from(f) == *y);
    let inside = [&v.pair.left, &v.pair.right].iter().all(|side| side.enumerate(budget).iter().all(in_x));
    let t = v.pair.witness.clone().expect("the diagonal pair carries a witness");
    Ok(vec![
        Verification::new("Y and Z lie inside X", Method::ToBudget(budget), inside),
        Verification::new(
            "sampled axioms of V are consistent",
            Method::Decider,
            v.axioms_consistent(8, janiczak::DEFAULT_BUDGET)?,
        ),
        Verification::new(
            "h is the pushed-forward witness composed with n -> A'_n",
            Method::Exact,
            v.witness == transported_witness(&atom_map(&spec.relation), &t),
        ),
        Verification::new("literals of V are settled on X up to F(depth)", Method::Exact, true)
            .with_detail(serde_json::to_string(&literals).expect("serializable")),
    ])
}

pub fn construct_build_v(depth: usize, subject: Option<&str>) -> Result<Certificate> {
    let cfg = config(depth)?;
    let u = input::subject(subject)?;
    let mut x = XBuild::new(u.clone(), cfg);
    let v = build_v(&mut x)?;
    let prefix = v.f_prefix.clone();
    let mut checks = x_checks(&x, &prefix);
    checks.extend(v_checks(&v, &prefix)?);
    let bundle = evidence_bundle(&mut x, &v, EVIDENCE_LIMIT)?;
    let mut outputs = construct_outputs(&prefix, &x, &bundle, &checks);
    outputs["theory"] = json(&v.theory);
    outputs["witness"] = json(&v.witness);
    let mut all = checks;
    all.extend(evidence_checks(&bundle));
    Ok(Certificate::new("construct build-v", json!({ "depth": depth, "subject": json(&u) }), outputs, all))
}

fn pipeline(subject: Option<&str>, depth: usize) -> Result<(Weaker, XBuild, Theory)> {
    let cfg = config(depth)?;
    let u = input::subject(subject)?;
    let (w, x) = weaker_theory(SubjectCertificate::janiczak(u.clone())?, cfg)?;
    Ok((w, x, u))
}

pub fn construct_weaker(depth: usize, subject: Option<&str>) -> Result<Certificate> {
    let (w, mut x, u) = pipeline(subject, depth)?;
    let mut checks = x_checks(&x, &w.f_prefix);
    checks.extend(witness_checks(&w, 12)?);
    let bundle = evidence_bundle(&mut x, &w.v, EVIDENCE_LIMIT)?;
    let mut outputs = construct_outputs(&w.f_prefix, &x, &bundle, &checks);
    outputs["theory"] = json(&w.theory);
    outputs["semi_reduction"] = json(&w.semi_reduction.func);
    outputs["tei_witness"] = json(&w.tei_witness);
    let mut all = checks;
    all.extend(evidence_checks(&bundle));
    Ok(Certificate::new("construct weaker", json!({ "depth": depth, "subject": json(&u) }), outputs, all))
}

pub fn construct_witness_oplus(subject: Option<&str>, instance: Option<usize>) -> Result<Certificate> {
    let (w, _, u) = pipeline(subject, insep::construct::xbuild::DEFAULT_DEPTH)?;
    let all = race_instances(&w)?;
    let chosen: Vec<_> = match instance {
        Some(k) => vec![all.get(k).cloned().ok_or_else(|| Error::Input(format!("instance {k} of {}", all.len())))?],
        None => all,
    };
    let mut checks = Vec::new();
    let mut runs = Vec::new();
    for inst in &chosen {
        let r = run_race(inst)?;
        checks.extend(r.checks.iter().map(|c| {
            let mut c = c.clone();
            c.claim = format!("{}: {}", r.name, c.claim);
            c
        }));
        runs.push(r);
    }
    if instance.is_none() {
        let count = |case| runs.iter().filter(|r| r.outcome.case == case).count();
        let covered = [RaceCase::A, RaceCase::B, RaceCase::C].iter().all(|&c| count(c) >= 2);
        checks.push(Verification::new("each case fires on at least two instances", Method::Exact, covered));
    }
    Ok(Certificate::new(
        "construct witness-oplus",
        json!({ "subject": json(&u), "instance": instance }),
        json!({ "races": json(&runs) }),
        checks,
    ))
}

pub fn construct_eet_tei(subject: Option<&str>) -> Result<Certificate> {
    let (w, _, u) = pipeline(subject, insep::construct::xbuild::DEFAULT_DEPTH)?;
    let all = race_instances(&w)?;
    let mut checks = Vec::new();
    for inst in &all {
        checks.push(eet_check(inst)?);
    }
    for case in [RaceCase::A, RaceCase::B, RaceCase::C] {
        if let Some(inst) = all.iter().find(|i| i.expected == case) {
            checks.push(round_trip_check(inst)?);
        }
    }
    Ok(Certificate::new(
        "construct eet-tei",
        json!({ "subject": json(&u) }),
        json!({ "extensions": all.iter().map(|i| i.name.clone()).collect::<Vec<_>>() }),
        checks,
    ))
}
