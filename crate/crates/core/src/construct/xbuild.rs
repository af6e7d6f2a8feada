//! The recursive set `X = ran F` such that no consistent J,X-theory
//! interprets the subject theory `U`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::janiczak::{decide_comb, normal_form_over, BoolComb, Decision, E, MAX_PROFILE_ATOMS};
use crate::logic::{apply_translation, Formula, Signature, Theory, Translation, TranslationEnumerator};
use crate::recfun::{Asm, Index, PrimOp};

/// Default number of steps of the `F` recurrence.
pub const DEFAULT_DEPTH: usize = 2;
/// Environment variable capping the depth of the exponential sweeps.
pub const DEPTH_ENV: &str = "INSEP_DEPTH_LIMIT";

/// Limits for the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct XConfig {
    /// Largest `k` for which `F(k)` may be computed.
    pub depth: usize,
    /// Theorem-stream entries scanned in the least-`m` search.
    pub m_budget: usize,
    /// Work allowed for one normal-form computation.
    pub nf_budget: u64,
}

impl Default for XConfig {
    fn default() -> XConfig {
        XConfig { depth: DEFAULT_DEPTH, m_budget: 512, nf_budget: 50_000_000 }
    }
}

impl XConfig {
    /// The default limits with the depth capped by `INSEP_DEPTH_LIMIT`.
    pub fn from_env() -> XConfig {
        let mut c = XConfig::default();
        if let Some(d) = std::env::var(DEPTH_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            c.depth = d;
        }
        c
    }
}

/// One evaluation of `t⟨n, i, j⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TRecord {
    pub n: usize,
    pub i: usize,
    pub j: u64,
    /// Position of the first theorem whose translation `J + C_{n,j}` fails to prove.
    pub m: usize,
    pub sentence: String,
    pub normal_form: String,
    pub t: usize,
}

/// `J + C_{n,j}` as literal constraints: `A_s` for `s < n` as bit `s` of `j`.
pub fn profile_literals(n: usize, j: u64) -> impl Fn(usize) -> Result<Option<bool>> {
    move |s| Ok((s < n).then(|| j >> s & 1 == 1))
}

/// State of the construction over a subject theory.
pub struct XBuild {
    pub subject: Theory,
    pub config: XConfig,
    f_prefix: Vec<u64>,
    records: Vec<TRecord>,
    stream: Vec<Formula>,
    translations: Vec<Translation>,
    enumerator: TranslationEnumerator,
    normal_forms: HashMap<(usize, usize), BoolComb>,
}

fn target_signature() -> Signature {
    Signature::binary(E)
}

impl XBuild {
    pub fn new(subject: Theory, config: XConfig) -> XBuild {
        let enumerator = TranslationEnumerator::new(&subject.signature, &target_signature());
        XBuild {
            subject,
            config,
            f_prefix: vec![0],
            records: vec![],
            stream: vec![],
            translations: vec![],
            enumerator,
            normal_forms: HashMap::new(),
        }
    }

    /// `τ_i`, the `i`-th translation of the subject language into `{E}`.
    pub fn translation(&mut self, i: usize) -> Translation {
        while self.translations.len() <= i {
            let t = self.enumerator.next().expect("translations are unbounded");
            self.translations.push(t);
        }
        self.translations[i].clone()
    }

    /// `φ_m` of the subject's theorem enumeration, within the configured budget.
    pub fn theorem(&mut self, m: usize) -> Option<Formula> {
        if m >= self.config.m_budget {
            return None;
        }
        if m >= self.stream.len() {
            let want = (m + 1).next_power_of_two().max(16).min(self.config.m_budget);
            self.stream = self.subject.theorem_stream(want);
        }
        self.stream.get(m).cloned()
    }

    fn translated_nf(&mut self, m: usize, i: usize) -> Result<Option<BoolComb>> {
        if let Some(b) = self.normal_forms.get(&(m, i)) {
            return Ok(Some(b.clone()));
        }
        let Some(phi) = self.theorem(m) else { return Ok(None) };
        let tau = self.translation(i);
        let image = apply_translation(&phi, &tau)?;
        let (nf, _) = normal_form_over(&image, E, self.config.nf_budget)?;
        self.normal_forms.insert((m, i), nf.clone());
        Ok(Some(nf))
    }

    /// Least `m` with `J + C_{n,j} ⊬ (φ_m)^{τ_i}` and the normal form of that translation.
    pub fn least_m(&mut self, n: usize, i: usize, j: u64) -> Result<(usize, BoolComb)> {
        if n > MAX_PROFILE_ATOMS || (n < 64 && j >> n != 0) {
            return Err(Error::Input(format!("profile {j} out of range for {n} atoms")));
        }
        let lits = profile_literals(n, j);
        for m in 0.. {
            let Some(nf) = self.translated_nf(m, i)? else {
                return Err(Error::Resource(format!(
                    "least-m search exhausted: n={n} i={i} j={j}, scanned {m} theorems of {}",
                    self.subject.name
                )));
            };
            if let Decision::NotProvable { .. } = decide_comb(&[], &lits, &nf)? {
                return Ok((m, nf));
            }
        }
        unreachable!()
    }

    /// `t⟨n, i, j⟩ = sup{s + 1 : A_s occurs in the normal form of (φ_m)^{τ_i}}`.
    pub fn compute_t(&mut self, n: usize, i: usize, j: u64) -> Result<usize> {
        Ok(self.t_record(n, i, j)?.t)
    }

    pub fn t_record(&mut self, n: usize, i: usize, j: u64) -> Result<TRecord> {
        let (m, nf) = self.least_m(n, i, j)?;
        let phi = self.theorem(m).expect("found within budget");
        Ok(TRecord { n, i, j, m, sentence: phi.to_string(), normal_form: nf.describe(), t: nf.t() })
    }

    /// `f(n, i) = max(n + 1, max_{j < 2^n} t⟨n, i, j⟩)`, recording each `t`.
    pub fn compute_f(&mut self, n: usize, i: usize) -> Result<u64> {
        if n > MAX_PROFILE_ATOMS {
            return Err(Error::Resource(format!("2^{n} profiles exceeds the limit 2^{MAX_PROFILE_ATOMS}")));
        }
        let mut best = n as u64 + 1;
        for j in 0..1u64 << n {
            let r = self.t_record(n, i, j)?;
            best = best.max(r.t as u64);
            self.records.push(r);
        }
        Ok(best)
    }

    /// `F(0) = 0`, `F(k + 1) = f(F(k) + 1, k)`.
    pub fn compute_big_f(&mut self, k: usize) -> Result<u64> {
        if k > self.config.depth {
            return Err(Error::Resource(format!("F({k}) is past the configured depth {}", self.config.depth)));
        }
        while self.f_prefix.len() <= k {
            let prev = self.f_prefix.len() - 1;
            let n = usize::try_from(self.f_prefix[prev] + 1).map_err(|_| Error::Resource("F overflow".into()))?;
            let next = self.compute_f(n, prev)?;
            self.f_prefix.push(next);
        }
        Ok(self.f_prefix[k])
    }

    /// `[F(0), …, F(k)]`.
    pub fn x_prefix(&mut self, k: usize) -> Result<Vec<u64>> {
        self.compute_big_f(k)?;
        Ok(self.f_prefix[..=k].to_vec())
    }

    /// The `t` values computed so far, in computation order.
    pub fn records(&self) -> &[TRecord] {
        &self.records
    }

    /// Membership in `X` for `x ≤ F(k)` where `k` is the computed depth.
    pub fn contains(&self, x: u64) -> Option<bool> {
        let last = *self.f_prefix.last()?;
        (x <= last).then(|| self.f_prefix.contains(&x))
    }

    /// Index of `F` as a machine program.
    pub fn f_index(&self) -> Index {
        f_program(&self.subject)
    }

    /// Index of the characteristic function of `X`: scans `F(0), F(1), …`
    /// until it reaches or passes the argument.
    pub fn x_index(&self) -> Index {
        let mut asm = Asm::new(1);
        let d = asm.constant(self.subject.code());
        let k = asm.reg();
        let top = asm.label();
        asm.bind(top);
        let fk = asm.reg();
        asm.prim(fk, PrimOp::XF, &[d, k]);
        let hit = asm.reg();
        asm.prim(hit, PrimOp::Eq, &[fk, 0]);
        let yes = asm.label();
        asm.jump_if_nonzero(hit, yes);
        let past = asm.reg();
        asm.prim(past, PrimOp::Lt, &[0, fk]);
        let no = asm.label();
        asm.jump_if_nonzero(past, no);
        asm.inc(k);
        asm.jmp(top);
        asm.bind(yes);
        asm.halt(hit);
        asm.bind(no);
        let z = asm.zero();
        asm.halt(z);
        Index::of(&asm.finish())
    }
}

/// `k ↦ F(k)` for the construction over `subject`.
pub fn f_program(subject: &Theory) -> Index {
    let mut asm = Asm::new(1);
    let d = asm.constant(subject.code());
    let out = asm.reg();
    asm.prim(out, PrimOp::XF, &[d, 0]);
    asm.halt(out);
    Index::of(&asm.finish())
}

thread_local! {
    static BUILDS: RefCell<HashMap<BigUint, Rc<RefCell<XBuild>>>> = RefCell::new(HashMap::new());
}

/// Machine cost charged for `F(k)`.
fn f_cost(k: usize) -> u64 {
    64 * (k as u64 + 1)
}

/// `F(k)` over the subject numbered `desc`, metered. `None` (divergence) for
/// non-descriptors, past the configured depth, or beyond `budget`.
pub fn f_by_code(desc: &BigUint, k: usize, budget: u64) -> Option<(BigUint, u64)> {
    let cost = f_cost(k);
    if cost > budget {
        return None;
    }
    let build = BUILDS.with(|b| {
        if let Some(x) = b.borrow().get(desc) {
            return Some(x.clone());
        }
        let subject = Theory::from_code(desc)?;
        let x = Rc::new(RefCell::new(XBuild::new((*subject).clone(), XConfig::from_env())));
        b.borrow_mut().insert(desc.clone(), x.clone());
        Some(x)
    })?;
    let v = build.borrow_mut().compute_big_f(k).ok()?;
    Some((BigUint::from(v), cost))
}

/// `F(k)` read back from a machine result.
pub fn f_value(out: &BigUint) -> Option<u64> {
    out.to_u64()
}

/// `U = J + {A_n : n ≡ 0 mod 4} + {¬A_n : n ≡ 2 mod 4}`, a decidable subject
/// built from a disjoint recursive split of the even indices.
pub fn default_subject() -> Theory {
    use crate::logic::AtomSet;
    use crate::recfun::Decidable;
    Theory::janiczak(
        "U",
        E,
        AtomSet::Decidable { set: Decidable::residues(4, &[0]) },
        AtomSet::Decidable { set: Decidable::residues(4, &[2]) },
        vec![],
    )
}
