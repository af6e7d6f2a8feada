//! Acceptance suite: one PASS/FAIL line per criterion. Thresholds and budgets
//! are pinned below.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{nat, nats, random_sentence, reference_programs, Sent, Structure};
use insep::construct::race::RaceCase;
use insep::construct::weaker::{
    eet_check, evidence_bundle, race_instances, round_trip_check, run_race, weaker_theory, SubjectCertificate,
};
use insep::construct::xbuild::{default_subject, XBuild, XConfig};
use insep::inseparable::{
    check_contract, k_pair, oplus_semi_reduction, ContractCheck, DisjointPair, Origin, SemiReduction,
};
use insep::janiczak::{atom_map, axiom_a, decide, eval, normal_form, BoolComb, Decision, SizeProfile};
use insep::logic::{AtomSet, Theory};
use insep::recfun::{
    builtin, constant_program, fixed_point, fixed_point_agrees, smn_agrees, Asm, Decidable, Fuel, Index, PrimOp, ReSet,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x1e5e9;

const SMN_TRIPLES: usize = 200;
const SMN_FUEL: u64 = 10_000;
const FIX_TRANSFORMS: usize = 20;
const FIX_ARGS_BELOW: u64 = 10;
const FIX_FUEL: u64 = 100_000;

const K_BUDGET: u64 = 100_000;
const WITNESS_CASES: usize = 50;
const WITNESS_FUEL: u64 = 1_000_000;

const CORPUS: usize = 500;
const CORPUS_RANK: usize = 2;
const MAX_BOUND: usize = 4;

const ATOMS_UP_TO: usize = 8;

const GOLDEN_DEPTH: usize = 2;
const GOLDEN_T: &str = include_str!("golden/t_values_depth2.json");

const EVIDENCE_MIN: usize = 3;
const EVIDENCE_LIMIT: usize = 16;

const SEMIRED_UP_TO: u32 = 30;
const SEMIRED_FUEL: u64 = 100_000;

const RACES_MIN: usize = 10;
const RACE_CASE_MIN: usize = 2;

const ROUND_TRIPS_MIN: usize = 3;
const EXTENSIONS: usize = 10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_recursion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let programs = reference_programs();
    for _ in 0..SMN_TRIPLES {
        let (i, arity, reference) = &programs[rng.gen_range(0..programs.len())];
        let args: Vec<u64> = (0..*arity).map(|_| rng.gen_range(0..20)).collect();
        let k = rng.gen_range(0..=*arity);
        let (fixed, ys) = (nats(&args[..k]), nats(&args[k..]));
        let direct = i.apply(&nats(&args), Fuel(SMN_FUEL));
        ensure(direct.value().cloned() == reference(&args).map(nat), || {
            format!("program {i} on {args:?}: {direct:?}")
        })?;
        ensure(smn_agrees(i, &fixed, &ys, Fuel(SMN_FUEL)), || format!("smn of {i} at {args:?} split {k}"))?;
    }
    let transforms = fixed_point_transforms();
    ensure(transforms.len() == FIX_TRANSFORMS, || format!("{} transforms", transforms.len()))?;
    let mut quines = 0;
    for (t, self_output) in &transforms {
        let n = fixed_point(t, 1);
        for x in 0..FIX_ARGS_BELOW {
            ensure(fixed_point_agrees(t, &n, &[nat(x)], Fuel(FIX_FUEL)), || format!("fixed point of {t} at {x}"))?;
        }
        if *self_output {
            // φ_n(x) = n: the fixed point prints its own index
            let out = n.apply(&[nat(3)], Fuel(FIX_FUEL));
            ensure(out.value() == Some(&n.index), || format!("self-output of {t}: {out:?}"))?;
            quines += 1;
        }
    }
    Ok(format!("{SMN_TRIPLES} s-m-n triples, {FIX_TRANSFORMS} transforms ({quines} self-printing)"))
}

/// `t(n) = smn(b, [n])` for a binary `b`, and constant transforms.
fn fixed_point_transforms() -> Vec<(Index, bool)> {
    let wrap = |b: &Index, extra: Option<u64>| {
        let mut asm = Asm::new(1);
        let br = asm.constant(b.index.clone());
        let mut args = vec![0];
        if let Some(c) = extra {
            args.push(asm.constant(c));
        }
        let out = asm.reg();
        asm.smn(out, br, &args);
        asm.halt(out);
        Index::of(&asm.finish())
    };
    let mut out = Vec::new();
    for (prog, arity, _) in reference_programs() {
        out.push((constant_program(1, prog.index.clone()), false));
        if arity == 2 {
            out.push((wrap(&prog, None), prog == Index::builtin(builtin::PROJ1_OF_2)));
        }
        if arity == 3 {
            out.push((wrap(&prog, Some(4)), false));
        }
    }
    for c in 2..7u32 {
        out.push((constant_program(1, constant_program(1, c).index), false));
    }
    out
}

type Membership = Box<dyn Fn(&BigUint) -> bool>;

fn reference_sets() -> Vec<(Decidable, Membership)> {
    let mut sets: Vec<(Decidable, Membership)> = Vec::new();
    for m in 2..=5u32 {
        for r in 0..m {
            sets.push((Decidable::residues(m.into(), &[r.into()]), Box::new(move |x| x % m == BigUint::from(r))));
        }
    }
    for n in [0u32, 3, 17] {
        sets.push((Decidable::Below { bound: n.into() }, Box::new(move |x| *x < BigUint::from(n))));
    }
    let finite = [0u32, 1, 2, 5];
    sets.push((
        Decidable::finite(finite.map(u64::from)),
        Box::new(move |x| finite.iter().any(|&f| *x == BigUint::from(f))),
    ));
    sets.push((Decidable::All, Box::new(|_| true)));
    sets.push((Decidable::Empty, Box::new(|_| false)));
    sets
}

fn c2_pairs() -> Outcome {
    let pair = k_pair();
    let overlap = pair.overlap_at(K_BUDGET);
    ensure(overlap.is_empty(), || format!("overlap {overlap:?}"))?;
    let sets = reference_sets();
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut cases = 0;
    for (a, (wi, in_i)) in sets.iter().enumerate() {
        for (wj, in_j) in sets.iter().skip(a + 1).step_by(3) {
            let check = check_contract(&pair, wi, wj, Fuel(WITNESS_FUEL)).map_err(|e| e.to_string())?;
            let kind = match &check {
                ContractCheck::Avoided { value } => {
                    ensure(!in_i(value) && !in_j(value), || format!("{value} avoided yet a member"))?;
                    "avoided"
                }
                ContractCheck::PreconditionRefuted { .. } => "refuted",
                other => return Err(format!("{wi:?} / {wj:?}: {other:?}")),
            };
            *tally.entry(kind).or_default() += 1;
            cases += 1;
        }
    }
    ensure(cases >= WITNESS_CASES, || format!("only {cases} witness cases"))?;
    Ok(format!("disjoint to {K_BUDGET}; {cases} witness cases {tally:?}"))
}

fn corpus() -> Vec<(Sent, SizeProfile)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    (0..CORPUS)
        .map(|_| {
            let s = random_sentence(&mut rng, CORPUS_RANK, 1);
            let bound = rng.gen_range(CORPUS_RANK + 1..=MAX_BOUND);
            let p = SizeProfile::from_bits(bound, rng.gen_range(0..1u64 << bound));
            (s, p)
        })
        .collect()
}

fn structure(p: &SizeProfile) -> Structure {
    Structure::for_profile(p.bound, &p.present.iter().copied().collect::<Vec<_>>())
}

fn c3_abstract_eval() -> Outcome {
    let mut truths = 0;
    for (k, (s, p)) in corpus().iter().enumerate() {
        let f = s.to_formula();
        let brute = structure(p).holds(s);
        let abs = eval(&f, p).map_err(|e| format!("sentence {k} {f}: {e}"))?;
        ensure(abs == brute, || format!("sentence {k} {f} on {p:?}: abstract {abs}, brute force {brute}"))?;
        // sizes past the bound are unconstrained, so a class of size bound + 1 changes nothing
        let mut sizes: Vec<usize> = p.present.iter().copied().collect();
        sizes.push(p.bound + 1);
        let other = Structure::new(&sizes, common::LARGE_CLASSES, common::LARGE_SIZE).holds(s);
        ensure(other == brute, || format!("sentence {k} {f}: a class of size {} changes its truth", p.bound + 1))?;
        truths += usize::from(brute);
    }
    Ok(format!("{CORPUS} sentences, {truths} true"))
}

fn c4_normal_forms() -> Outcome {
    for (k, (s, p)) in corpus().iter().enumerate() {
        let f = s.to_formula();
        let nf = normal_form(&f).map_err(|e| format!("sentence {k}: {e}"))?;
        let st = structure(p);
        let via_nf = nf.eval(&|i| st.has_class_of_size(i + 1));
        ensure(via_nf == st.holds(s), || format!("sentence {k} {f}: normal form {}", nf.describe()))?;
    }
    for n in 0..=ATOMS_UP_TO {
        let nf = normal_form(&axiom_a(n)).map_err(|e| e.to_string())?;
        ensure(nf == BoolComb::atom(n), || format!("NF(A_{n}) = {}", nf.describe()))?;
    }
    Ok(format!("{CORPUS} sentences; NF(A_n) = A_n for n <= {ATOMS_UP_TO}"))
}

fn c5_atoms_open() -> Outcome {
    for n in 0..=ATOMS_UP_TO {
        for positive in [true, false] {
            let s = if positive { axiom_a(n) } else { axiom_a(n).not() };
            match decide(&[], &s).map_err(|e| e.to_string())? {
                Decision::NotProvable { countermodel } => {
                    let st = structure(&countermodel);
                    ensure(st.has_class_of_size(n + 1) != positive, || {
                        format!("countermodel for ±A_{n} satisfies it")
                    })?;
                }
                other => return Err(format!("{}A_{n}: {other:?}", if positive { "" } else { "¬" })),
            }
        }
    }
    Ok(format!("±A_n open for n <= {ATOMS_UP_TO}, countermodels checked"))
}

fn c6_construction() -> Outcome {
    let mut x = XBuild::new(default_subject(), XConfig { depth: GOLDEN_DEPTH, ..XConfig::default() });
    let prefix = x.x_prefix(GOLDEN_DEPTH).map_err(|e| e.to_string())?;
    ensure(prefix[0] == 0, || format!("F(0) = {}", prefix[0]))?;
    ensure(prefix.windows(2).all(|w| w[1] >= w[0] + 2), || format!("gaps in {prefix:?}"))?;
    let t = serde_json::to_string_pretty(x.records()).expect("records serialize") + "\n";
    ensure(t == GOLDEN_T, || "t values differ from the golden file".to_string())?;
    Ok(format!("F = {prefix:?}, {} t values match", x.records().len()))
}

fn pipeline() -> Result<(insep::construct::weaker::Weaker, XBuild), String> {
    let s = SubjectCertificate::janiczak(default_subject()).map_err(|e| e.to_string())?;
    weaker_theory(s, XConfig::default()).map_err(|e| e.to_string())
}

fn c7_evidence() -> Outcome {
    let (w, mut x) = pipeline()?;
    let bundle = evidence_bundle(&mut x, &w.v, EVIDENCE_LIMIT).map_err(|e| e.to_string())?;
    ensure(bundle.len() >= EVIDENCE_MIN, || format!("{} instances", bundle.len()))?;
    for inst in &bundle {
        ensure(inst.holds(), || format!("instance n*={} j*={} fails", inst.n_star, inst.j_star))?;
    }
    Ok(format!("{} evidence instances", bundle.len()))
}

fn c8_semi_reduction() -> Outcome {
    let parity = DisjointPair {
        name: "parity".into(),
        left: ReSet::from_decidable(Decidable::residues(2, &[0])),
        right: ReSet::from_decidable(Decidable::residues(2, &[1])),
        witness: None,
        origin: Origin::Diagonal,
    };
    let even = || AtomSet::Decidable { set: Decidable::residues(2, &[0]) };
    let odd = || AtomSet::Decidable { set: Decidable::residues(2, &[1]) };
    let u = Theory::janiczak("U", "E", even(), odd(), vec![]);
    let v = Theory::janiczak("V", "F", odd(), even(), vec![]);
    let f2 = {
        let mut asm = Asm::new(1);
        let m = asm.constant(atom_map("F").index);
        let a = asm.reg();
        asm.call(a, m, &[0]);
        let out = asm.reg();
        asm.prim(out, PrimOp::Neg, &[a]);
        asm.halt(out);
        Index::of(&asm.finish())
    };
    let f1 = SemiReduction::new(atom_map("E"), parity.clone(), u);
    let f2 = SemiReduction::new(f2, parity, v);
    let g = oplus_semi_reduction(&f1, &f2).map_err(|e| e.to_string())?;
    for n in 0..=SEMIRED_UP_TO {
        let right = n % 2 == 1;
        let lands = g.lands(&nat(n.into()), right, Fuel(SEMIRED_FUEL)).map_err(|e| e.to_string())?;
        let strays = g.lands(&nat(n.into()), !right, Fuel(SEMIRED_FUEL)).map_err(|e| e.to_string())?;
        ensure(lands && !strays, || format!("n = {n}: lands {lands}, strays {strays}"))?;
    }
    Ok(format!("n <= {SEMIRED_UP_TO} on the parity pair"))
}

fn c9_races() -> Outcome {
    let (w, _) = pipeline()?;
    let instances = race_instances(&w).map_err(|e| e.to_string())?;
    ensure(instances.len() >= RACES_MIN, || format!("{} instances", instances.len()))?;
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    for inst in &instances {
        let r = run_race(inst).map_err(|e| format!("{}: {e}", inst.name))?;
        ensure(r.holds(), || {
            format!("{}: {:?}", inst.name, r.checks.iter().filter(|c| !c.result).collect::<Vec<_>>())
        })?;
        *cases.entry(format!("{:?}", r.outcome.case)).or_default() += 1;
    }
    for case in [RaceCase::A, RaceCase::B, RaceCase::C] {
        let k = cases.get(&format!("{case:?}")).copied().unwrap_or(0);
        ensure(k >= RACE_CASE_MIN, || format!("case {case:?} fired {k} times"))?;
    }
    Ok(format!("{} races, cases {cases:?}", instances.len()))
}

fn c10_transforms() -> Outcome {
    let (w, _) = pipeline()?;
    let instances = race_instances(&w).map_err(|e| e.to_string())?;
    ensure(instances.len() >= EXTENSIONS, || format!("{} extensions", instances.len()))?;
    for inst in instances.iter().take(EXTENSIONS) {
        let c = eet_check(inst).map_err(|e| format!("{}: {e}", inst.name))?;
        ensure(c.result, || format!("{}: {}", inst.name, c.claim))?;
    }
    let mut trips = 0;
    for case in [RaceCase::A, RaceCase::B, RaceCase::C] {
        let inst = instances.iter().find(|i| i.expected == case).ok_or(format!("no instance for {case:?}"))?;
        let c = round_trip_check(inst).map_err(|e| format!("{}: {e}", inst.name))?;
        ensure(c.result, || format!("{}: {}", inst.name, c.claim))?;
        trips += 1;
    }
    ensure(trips >= ROUND_TRIPS_MIN, || format!("{trips} round trips"))?;
    Ok(format!("{trips} round trips, {EXTENSIONS} extensions"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("recursion theorem and s-m-n", c1_recursion),
        ("inseparable pairs and witnesses", c2_pairs),
        ("abstract evaluation against brute force", c3_abstract_eval),
        ("normal forms", c4_normal_forms),
        ("atoms are independent of J", c5_atoms_open),
        ("construction of X and golden t values", c6_construction),
        ("evidence bundle", c7_evidence),
        ("oplus semi-reduction", c8_semi_reduction),
        ("staged witness races", c9_races),
        ("witness transforms", c10_transforms),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        if filter.as_deref().is_some_and(|f| f != id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
