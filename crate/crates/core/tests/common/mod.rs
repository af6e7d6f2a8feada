//! Reference oracles shared by the integration tests. Nothing here calls the
//! library's evaluators: structures are concrete and sentences are checked by
//! brute force over their elements.

#![allow(dead_code)]

use insep::logic::Formula;
use insep::recfun::{builtin, Asm, Index, PrimOp};
use num_bigint::BigUint;
use rand::Rng;

/// Number of large classes in a concrete structure.
pub const LARGE_CLASSES: usize = 8;
/// Size of each large class.
pub const LARGE_SIZE: usize = 8;

/// A sentence over one binary relation, with variables numbered.
#[derive(Debug, Clone)]
pub enum Sent {
    True,
    False,
    E(usize, usize),
    Eq(usize, usize),
    /// "some class has exactly `n + 1` elements"
    Atom(usize),
    Not(Box<Sent>),
    And(Box<Sent>, Box<Sent>),
    Or(Box<Sent>, Box<Sent>),
    Imp(Box<Sent>, Box<Sent>),
    Exists(usize, Box<Sent>),
    Forall(usize, Box<Sent>),
}

fn var(v: usize) -> String {
    format!("x{v}")
}

impl Sent {
    pub fn to_formula(&self) -> Formula {
        match self {
            Sent::True => Formula::True,
            Sent::False => Formula::False,
            Sent::E(a, b) => Formula::Rel("E".into(), vec![var(*a), var(*b)]),
            Sent::Eq(a, b) => Formula::Eq(var(*a), var(*b)),
            Sent::Atom(n) => insep::janiczak::axiom_a(*n),
            Sent::Not(a) => a.to_formula().not(),
            Sent::And(a, b) => a.to_formula().and(b.to_formula()),
            Sent::Or(a, b) => a.to_formula().or(b.to_formula()),
            Sent::Imp(a, b) => a.to_formula().implies(b.to_formula()),
            Sent::Exists(v, a) => Formula::exists(&var(*v), a.to_formula()),
            Sent::Forall(v, a) => Formula::forall(&var(*v), a.to_formula()),
        }
    }
}

/// A finite equivalence relation given by the class of each element.
#[derive(Debug, Clone)]
pub struct Structure {
    pub class_of: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

impl Structure {
    /// One class of each listed size, then `large` classes of `large_size`.
    pub fn new(sizes: &[usize], large: usize, large_size: usize) -> Structure {
        let mut class_sizes = sizes.to_vec();
        class_sizes.extend(std::iter::repeat_n(large_size, large));
        let class_of = class_sizes.iter().enumerate().flat_map(|(c, &s)| std::iter::repeat_n(c, s)).collect();
        Structure { class_of, class_sizes }
    }

    /// The standard structure for a profile: the present sizes up to `bound`,
    /// with large classes too big to be mistaken for any size up to `bound`.
    pub fn for_profile(bound: usize, sizes: &[usize]) -> Structure {
        Structure::new(sizes, LARGE_CLASSES, LARGE_SIZE.max(bound + 1))
    }

    pub fn has_class_of_size(&self, s: usize) -> bool {
        self.class_sizes.contains(&s)
    }

    pub fn holds(&self, s: &Sent) -> bool {
        self.eval(s, &mut [usize::MAX; 8])
    }

    fn eval(&self, s: &Sent, env: &mut [usize; 8]) -> bool {
        match s {
            Sent::True => true,
            Sent::False => false,
            Sent::E(a, b) => self.class_of[env[*a]] == self.class_of[env[*b]],
            Sent::Eq(a, b) => env[*a] == env[*b],
            Sent::Atom(n) => self.has_class_of_size(n + 1),
            Sent::Not(a) => !self.eval(a, env),
            Sent::And(a, b) => self.eval(a, env) && self.eval(b, env),
            Sent::Or(a, b) => self.eval(a, env) || self.eval(b, env),
            Sent::Imp(a, b) => !self.eval(a, env) || self.eval(b, env),
            Sent::Exists(v, a) | Sent::Forall(v, a) => {
                let want = matches!(s, Sent::Exists(..));
                let saved = env[*v];
                let mut found = !want;
                for x in 0..self.class_of.len() {
                    env[*v] = x;
                    if self.eval(a, env) == want {
                        found = want;
                        break;
                    }
                }
                env[*v] = saved;
                found
            }
        }
    }
}

/// Random sentence of quantifier rank at most `rank` over variables
/// `x0..x{rank-1}`. Atoms `A_n` with `n < atoms` occur only outside all
/// quantifiers, so they keep the rank when `A_n` itself has rank `n + 2 <= rank`.
pub fn random_sentence(rng: &mut impl Rng, rank: usize, atoms: usize) -> Sent {
    fn go(rng: &mut impl Rng, bound: &mut Vec<usize>, rank: usize, atoms: usize, size: usize) -> Sent {
        let top = bound.is_empty();
        let quantify = bound.len() < rank && (if top { rng.gen_bool(0.75) } else { rng.gen_bool(0.45) });
        if quantify {
            let v = bound.len();
            bound.push(v);
            let body = go(rng, bound, rank, atoms, size + 1);
            bound.pop();
            return if rng.gen_bool(0.5) { Sent::Exists(v, Box::new(body)) } else { Sent::Forall(v, Box::new(body)) };
        }
        if size > 5 || rng.gen_bool(0.35) {
            if top {
                return match rng.gen_range(0..4) {
                    0 => Sent::True,
                    1 => Sent::False,
                    _ if atoms > 0 => Sent::Atom(rng.gen_range(0..atoms)),
                    _ => Sent::True,
                };
            }
            let a = bound[rng.gen_range(0..bound.len())];
            let b = bound[rng.gen_range(0..bound.len())];
            return if rng.gen_bool(0.6) { Sent::E(a, b) } else { Sent::Eq(a, b) };
        }
        let mut sub = |rng: &mut _| Box::new(go(rng, bound, rank, atoms, size + 1));
        match rng.gen_range(0..4) {
            0 => Sent::Not(sub(rng)),
            1 => Sent::And(sub(rng), sub(rng)),
            2 => Sent::Or(sub(rng), sub(rng)),
            _ => Sent::Imp(sub(rng), sub(rng)),
        }
    }
    go(rng, &mut Vec::new(), rank, atoms, 0)
}

/// Programs with known semantics: `(index, arity, reference)`. The reference
/// returns `None` where the program diverges.
pub type Reference = fn(&[u64]) -> Option<u64>;

pub fn reference_programs() -> Vec<(Index, usize, Reference)> {
    let sum3 = {
        let mut asm = Asm::new(3);
        let t = asm.reg();
        asm.prim(t, PrimOp::Add, &[0, 1]);
        asm.prim(t, PrimOp::Add, &[t, 2]);
        asm.halt(t);
        Index::of(&asm.finish())
    };
    let select = {
        let mut asm = Asm::new(3);
        let zero = asm.label();
        asm.jump_if_zero(0, zero);
        asm.halt(2);
        asm.bind(zero);
        asm.halt(1);
        Index::of(&asm.finish())
    };
    let monus = {
        let mut asm = Asm::new(2);
        let t = asm.reg();
        asm.prim(t, PrimOp::Monus, &[0, 1]);
        asm.halt(t);
        Index::of(&asm.finish())
    };
    vec![
        (Index::builtin(builtin::CONST0), 1, |_| Some(0)),
        (Index::builtin(builtin::CONST1), 1, |_| Some(1)),
        (Index::builtin(builtin::IDENTITY), 1, |a| Some(a[0])),
        (Index::builtin(builtin::SUCCESSOR), 1, |a| Some(a[0] + 1)),
        (Index::builtin(builtin::ADD), 2, |a| Some(a[0] + a[1])),
        (Index::builtin(builtin::HALT_IF_EVEN), 1, |a| (a[0] % 2 == 0).then_some(0)),
        (Index::builtin(builtin::PROJ1_OF_2), 2, |a| Some(a[0])),
        (sum3, 3, |a| Some(a[0] + a[1] + a[2])),
        (select, 3, |a| Some(if a[0] == 0 { a[1] } else { a[2] })),
        (monus, 2, |a| Some(a[0].saturating_sub(a[1]))),
    ]
}

pub fn nat(v: u64) -> BigUint {
    BigUint::from(v)
}

pub fn nats(vs: &[u64]) -> Vec<BigUint> {
    vs.iter().copied().map(nat).collect()
}
