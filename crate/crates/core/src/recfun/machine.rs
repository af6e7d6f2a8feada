use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::prim;
use super::program::{decode, Instr, Program};
use crate::error::{Error, Result};

/// Step budget for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fuel(pub u64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Halted(#[serde(with = "crate::bigdec")] BigUint),
    OutOfFuel,
}

impl Outcome {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            Outcome::Halted(v) => Some(v),
            Outcome::OutOfFuel => None,
        }
    }

    pub fn halted(&self) -> bool {
        matches!(self, Outcome::Halted(_))
    }
}

thread_local! {
    static DECODED: RefCell<HashMap<BigUint, Rc<Program>>> = RefCell::new(HashMap::new());
}

pub(crate) fn decode_cached(n: &BigUint) -> Rc<Program> {
    DECODED.with(|c| {
        let mut c = c.borrow_mut();
        if let Some(p) = c.get(n) {
            return p.clone();
        }
        if c.len() > 4096 {
            c.clear();
        }
        let p = Rc::new(decode(n));
        c.insert(n.clone(), p.clone());
        p
    })
}

/// Runs `p` on exactly `p.arity` arguments.
pub fn run(p: &Program, args: &[BigUint], fuel: Fuel) -> Result<Outcome> {
    if args.len() != p.arity {
        return Err(Error::Input(format!("program takes {} arguments, got {}", p.arity, args.len())));
    }
    Ok(apply(p, args, fuel))
}

/// Runs `p` with the argument list truncated or zero-padded to its arity.
/// This is the convention used by `call`, `step` and the RE-set machinery.
pub fn apply(p: &Program, args: &[BigUint], fuel: Fuel) -> Outcome {
    Interp::new(fuel.0).exec(Rc::new(p.clone()), args)
}

pub fn apply_index(index: &BigUint, args: &[BigUint], fuel: Fuel) -> Outcome {
    Interp::new(fuel.0).exec(decode_cached(index), args)
}

/// Like [`apply_index`], also reporting the number of steps consumed.
pub fn apply_index_counted(index: &BigUint, args: &[BigUint], fuel: Fuel) -> (Outcome, u64) {
    let mut it = Interp::new(fuel.0);
    let out = it.exec(decode_cached(index), args);
    (out, it.used)
}

enum Ret {
    Top,
    Call { dst: usize },
    Step { dst: usize, own_end: u64, parent_deadline: u64 },
}

struct Frame {
    prog: Rc<Program>,
    pc: usize,
    regs: Vec<BigUint>,
    ret: Ret,
}

impl Frame {
    fn new(prog: Rc<Program>, args: &[BigUint], ret: Ret) -> Frame {
        let mut regs = vec![BigUint::zero(); prog.register_count()];
        for (k, a) in args.iter().take(prog.arity).enumerate() {
            regs[k] = a.clone();
        }
        Frame { prog, pc: 0, regs, ret }
    }
}

struct Interp {
    used: u64,
    deadlines: Vec<u64>,
    frames: Vec<Frame>,
}

enum Flow {
    Next,
    Halt(BigUint),
    Exhausted,
}

impl Interp {
    fn new(fuel: u64) -> Interp {
        Interp { used: 0, deadlines: vec![fuel], frames: Vec::new() }
    }

    fn deadline(&self) -> u64 {
        *self.deadlines.last().expect("deadline stack never empty")
    }

    fn exec(&mut self, prog: Rc<Program>, args: &[BigUint]) -> Outcome {
        self.frames.push(Frame::new(prog, args, Ret::Top));
        loop {
            let flow = if self.used >= self.deadline() { Flow::Exhausted } else { self.tick() };
            match flow {
                Flow::Next => {}
                Flow::Halt(v) => {
                    let frame = self.frames.pop().expect("frame");
                    match frame.ret {
                        Ret::Top => return Outcome::Halted(v),
                        Ret::Call { dst } => self.top().regs[dst] = v,
                        Ret::Step { dst, .. } => {
                            self.deadlines.pop();
                            self.top().regs[dst] = v + BigUint::one();
                        }
                    }
                }
                Flow::Exhausted => {
                    // Unwind to the innermost bounded run whose own limit was hit.
                    loop {
                        let Some(frame) = self.frames.pop() else { return Outcome::OutOfFuel };
                        match frame.ret {
                            Ret::Top => return Outcome::OutOfFuel,
                            Ret::Call { .. } => continue,
                            Ret::Step { dst, own_end, parent_deadline } => {
                                self.deadlines.pop();
                                if own_end <= parent_deadline {
                                    self.top().regs[dst] = BigUint::zero();
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn top(&mut self) -> &mut Frame {
        self.frames.last_mut().expect("frame")
    }

    fn tick(&mut self) -> Flow {
        let deadline = self.deadline();
        let frame = self.frames.last_mut().expect("frame");
        let pc = frame.pc;
        let Some(ins) = frame.prog.instructions.get(pc).cloned() else {
            return Flow::Halt(frame.regs[0].clone());
        };
        self.used += 1;
        frame.pc += 1;
        match ins {
            Instr::Inc(r) => frame.regs[r] += 1u32,
            Instr::Dec(r, t) => {
                if frame.regs[r].is_zero() {
                    frame.pc = t;
                } else {
                    frame.regs[r] -= 1u32;
                }
            }
            Instr::Jmp(t) => {
                if t == pc {
                    self.used = deadline;
                    return Flow::Exhausted;
                }
                frame.pc = t;
            }
            Instr::Halt(r) => return Flow::Halt(std::mem::take(&mut frame.regs[r])),
            Instr::Const(r, n) => frame.regs[r] = n,
            Instr::Call { dst, prog, args } => {
                let callee = decode_cached(&frame.regs[prog]);
                let argv: Vec<BigUint> = args.iter().map(|&a| frame.regs[a].clone()).collect();
                self.frames.push(Frame::new(callee, &argv, Ret::Call { dst }));
            }
            Instr::Smn { dst, prog, args } => {
                let fixed: Vec<BigUint> = args.iter().map(|&a| frame.regs[a].clone()).collect();
                frame.regs[dst] = super::smn_value(&frame.regs[prog], &fixed);
            }
            Instr::Step { dst, prog, fuel, args } => {
                let callee = decode_cached(&frame.regs[prog]);
                let argv: Vec<BigUint> = args.iter().map(|&a| frame.regs[a].clone()).collect();
                let limit = frame.regs[fuel].to_u64().unwrap_or(u64::MAX);
                let own_end = self.used.saturating_add(limit);
                self.deadlines.push(own_end.min(deadline));
                self.frames.push(Frame::new(callee, &argv, Ret::Step { dst, own_end, parent_deadline: deadline }));
            }
            Instr::Prim { dst, op, args } => {
                let argv: Vec<BigUint> = args.iter().map(|&a| frame.regs[a].clone()).collect();
                let budget = deadline - self.used;
                match prim::apply(op, &argv, budget) {
                    Some((v, cost)) if cost <= budget => {
                        self.used += cost;
                        self.top().regs[dst] = v;
                    }
                    _ => {
                        self.used = deadline;
                        return Flow::Exhausted;
                    }
                }
            }
        }
        Flow::Next
    }
}
