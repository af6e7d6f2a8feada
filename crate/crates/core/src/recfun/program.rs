//! Programs for the register machine and their Gödel numbering.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textcode;

pub type Reg = usize;

/// Natively computed total functions available to programs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimOp {
    Add,
    Monus,
    Mul,
    Div,
    Mod,
    Eq,
    Lt,
    Pair,
    Fst,
    Snd,
    /// Sentence-code builders over canonical text.
    Neg,
    Imp,
    And,
    Or,
    /// `code(φ) + 1` when the argument codes `~φ`, otherwise 0.
    UnNeg,
    /// `(relation-name code, n) ↦ ⌜A_n⌝` over that relation.
    AtomA,
    /// `(theory descriptor code, sentence code) ↦ 1` if provable, else 0.
    Provable,
    /// `(subject descriptor code, k) ↦ F(k)` of the X construction.
    XF,
    /// `(signature code, k) ↦` code of the `k`-th sentence in canonical order.
    Sentence,
}

impl PrimOp {
    pub const ALL: [PrimOp; 19] = [
        PrimOp::Add,
        PrimOp::Monus,
        PrimOp::Mul,
        PrimOp::Div,
        PrimOp::Mod,
        PrimOp::Eq,
        PrimOp::Lt,
        PrimOp::Pair,
        PrimOp::Fst,
        PrimOp::Snd,
        PrimOp::Neg,
        PrimOp::Imp,
        PrimOp::And,
        PrimOp::Or,
        PrimOp::UnNeg,
        PrimOp::AtomA,
        PrimOp::Provable,
        PrimOp::XF,
        PrimOp::Sentence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimOp::Add => "add",
            PrimOp::Monus => "monus",
            PrimOp::Mul => "mul",
            PrimOp::Div => "div",
            PrimOp::Mod => "mod",
            PrimOp::Eq => "eq",
            PrimOp::Lt => "lt",
            PrimOp::Pair => "pair",
            PrimOp::Fst => "fst",
            PrimOp::Snd => "snd",
            PrimOp::Neg => "neg",
            PrimOp::Imp => "imp",
            PrimOp::And => "and",
            PrimOp::Or => "or",
            PrimOp::UnNeg => "unneg",
            PrimOp::AtomA => "atoma",
            PrimOp::Provable => "provable",
            PrimOp::XF => "xf",
            PrimOp::Sentence => "sentence",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            PrimOp::Fst | PrimOp::Snd | PrimOp::Neg | PrimOp::UnNeg => 1,
            _ => 2,
        }
    }

    fn from_name(s: &str) -> Option<PrimOp> {
        PrimOp::ALL.iter().copied().find(|op| op.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Instr {
    Inc(Reg),
    /// If the register is zero jump to the target, otherwise decrement it.
    Dec(Reg, usize),
    Jmp(usize),
    Halt(Reg),
    Const(Reg, BigUint),
    /// `dst := φ_{prog}(args)`; divergence of the callee is divergence of the caller.
    Call {
        dst: Reg,
        prog: Reg,
        args: Vec<Reg>,
    },
    /// `dst := smn(prog, args)`.
    Smn {
        dst: Reg,
        prog: Reg,
        args: Vec<Reg>,
    },
    /// `dst := v + 1` if `φ_{prog}(args)` halts with `v` within `fuel` steps, else 0.
    Step {
        dst: Reg,
        prog: Reg,
        fuel: Reg,
        args: Vec<Reg>,
    },
    Prim {
        dst: Reg,
        op: PrimOp,
        args: Vec<Reg>,
    },
}

impl Instr {
    fn regs(&self) -> Vec<Reg> {
        match self {
            Instr::Inc(r) | Instr::Dec(r, _) | Instr::Halt(r) | Instr::Const(r, _) => vec![*r],
            Instr::Jmp(_) => vec![],
            Instr::Call { dst, prog, args } | Instr::Smn { dst, prog, args } => {
                let mut v = vec![*dst, *prog];
                v.extend(args);
                v
            }
            Instr::Step { dst, prog, fuel, args } => {
                let mut v = vec![*dst, *prog, *fuel];
                v.extend(args);
                v
            }
            Instr::Prim { dst, args, .. } => {
                let mut v = vec![*dst];
                v.extend(args);
                v
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Program {
    pub arity: usize,
    pub instructions: Vec<Instr>,
}

impl Program {
    pub fn new(arity: usize, instructions: Vec<Instr>) -> Result<Program> {
        let p = Program { arity, instructions };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let len = self.instructions.len();
        for (pc, ins) in self.instructions.iter().enumerate() {
            let target = match ins {
                Instr::Dec(_, t) | Instr::Jmp(t) => Some(*t),
                _ => None,
            };
            if let Some(t) = target {
                if t > len {
                    return Err(Error::Input(format!("jump target {t} out of range at {pc}")));
                }
            }
            if let Instr::Prim { op, args, .. } = ins {
                if args.len() != op.arity() {
                    return Err(Error::Input(format!("{} takes {} arguments", op.name(), op.arity())));
                }
            }
        }
        Ok(())
    }

    /// Number of registers the program touches (inputs included).
    pub fn register_count(&self) -> usize {
        self.instructions.iter().flat_map(|i| i.regs()).map(|r| r + 1).max().unwrap_or(0).max(self.arity).max(1)
    }
}

fn join_regs(out: &mut String, regs: &[Reg]) {
    for r in regs {
        out.push_str(&format!(" r{r}"));
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self {
            Instr::Inc(r) => s.push_str(&format!("inc r{r}")),
            Instr::Dec(r, t) => s.push_str(&format!("dec r{r} {t}")),
            Instr::Jmp(t) => s.push_str(&format!("jmp {t}")),
            Instr::Halt(r) => s.push_str(&format!("halt r{r}")),
            Instr::Const(r, n) => s.push_str(&format!("const r{r} {n}")),
            Instr::Call { dst, prog, args } => {
                s.push_str(&format!("call r{dst} r{prog}"));
                join_regs(&mut s, args);
            }
            Instr::Smn { dst, prog, args } => {
                s.push_str(&format!("smn r{dst} r{prog}"));
                join_regs(&mut s, args);
            }
            Instr::Step { dst, prog, fuel, args } => {
                s.push_str(&format!("step r{dst} r{prog} r{fuel}"));
                join_regs(&mut s, args);
            }
            Instr::Prim { dst, op, args } => {
                s.push_str(&format!("prim r{dst} {}", op.name()));
                join_regs(&mut s, args);
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arity {}", self.arity)?;
        for ins in &self.instructions {
            write!(f, "\n{ins}")?;
        }
        Ok(())
    }
}

fn parse_reg(tok: &str, line: usize) -> Result<Reg> {
    tok.strip_prefix('r')
        .filter(|d| !d.is_empty() && (d == &"0" || !d.starts_with('0')))
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or(Error::Syntax { pos: line, msg: format!("bad register `{tok}`") })
}

fn parse_nat<T: FromStr>(tok: &str, line: usize) -> Result<T> {
    if tok.len() > 1 && tok.starts_with('0') {
        return Err(Error::Syntax { pos: line, msg: format!("leading zero in `{tok}`") });
    }
    tok.parse::<T>().map_err(|_| Error::Syntax { pos: line, msg: format!("bad number `{tok}`") })
}

fn parse_instr(line: &str, lno: usize) -> Result<Instr> {
    let toks: Vec<&str> = line.split(' ').collect();
    let need = |n: usize| -> Result<()> {
        if toks.len() == n {
            Ok(())
        } else {
            Err(Error::Syntax { pos: lno, msg: format!("`{}` expects {} operands", toks[0], n - 1) })
        }
    };
    let regs = |from: usize| -> Result<Vec<Reg>> { toks[from..].iter().map(|t| parse_reg(t, lno)).collect() };
    let at_least = |n: usize| -> Result<()> {
        if toks.len() >= n {
            Ok(())
        } else {
            Err(Error::Syntax { pos: lno, msg: format!("`{}` needs more operands", toks[0]) })
        }
    };
    Ok(match toks[0] {
        "inc" => {
            need(2)?;
            Instr::Inc(parse_reg(toks[1], lno)?)
        }
        "dec" => {
            need(3)?;
            Instr::Dec(parse_reg(toks[1], lno)?, parse_nat(toks[2], lno)?)
        }
        "jmp" => {
            need(2)?;
            Instr::Jmp(parse_nat(toks[1], lno)?)
        }
        "halt" => {
            need(2)?;
            Instr::Halt(parse_reg(toks[1], lno)?)
        }
        "const" => {
            need(3)?;
            Instr::Const(parse_reg(toks[1], lno)?, parse_nat(toks[2], lno)?)
        }
        "call" | "smn" => {
            at_least(3)?;
            let dst = parse_reg(toks[1], lno)?;
            let prog = parse_reg(toks[2], lno)?;
            let args = regs(3)?;
            if toks[0] == "call" {
                Instr::Call { dst, prog, args }
            } else {
                Instr::Smn { dst, prog, args }
            }
        }
        "step" => {
            at_least(4)?;
            Instr::Step {
                dst: parse_reg(toks[1], lno)?,
                prog: parse_reg(toks[2], lno)?,
                fuel: parse_reg(toks[3], lno)?,
                args: regs(4)?,
            }
        }
        "prim" => {
            at_least(3)?;
            let op = PrimOp::from_name(toks[2])
                .ok_or(Error::Syntax { pos: lno, msg: format!("unknown primitive `{}`", toks[2]) })?;
            Instr::Prim { dst: parse_reg(toks[1], lno)?, op, args: regs(3)? }
        }
        other => return Err(Error::Syntax { pos: lno, msg: format!("unknown instruction `{other}`") }),
    })
}

impl FromStr for Program {
    type Err = Error;

    /// Parses the textual format: a header line `arity N` followed by one
    /// instruction per line. Lines are separated by a single `\n`, tokens by
    /// a single space.
    fn from_str(text: &str) -> Result<Program> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("");
        let arity = header
            .strip_prefix("arity ")
            .ok_or(Error::Syntax { pos: 0, msg: "missing `arity N` header".into() })
            .and_then(|n| parse_nat(n, 0))?;
        let instructions = lines.enumerate().map(|(k, l)| parse_instr(l, k + 1)).collect::<Result<Vec<_>>>()?;
        Program::new(arity, instructions)
    }
}

/// Programs with reserved small indices.
pub mod builtin {
    use super::*;

    pub const CONST0: usize = 0;
    pub const CONST1: usize = 1;
    pub const IDENTITY: usize = 2;
    pub const SUCCESSOR: usize = 3;
    pub const DIVERGE: usize = 4;
    pub const ADD: usize = 5;
    pub const HALT_IF_EVEN: usize = 6;
    pub const PROJ1_OF_2: usize = 7;
    pub const COUNT: usize = 8;

    pub fn table() -> Vec<Program> {
        use Instr::*;
        vec![
            Program { arity: 1, instructions: vec![Const(0, 0u32.into()), Halt(0)] },
            Program { arity: 1, instructions: vec![Const(0, 1u32.into()), Halt(0)] },
            Program { arity: 1, instructions: vec![Halt(0)] },
            Program { arity: 1, instructions: vec![Inc(0), Halt(0)] },
            Program { arity: 0, instructions: vec![Jmp(0)] },
            Program { arity: 2, instructions: vec![Dec(1, 3), Inc(0), Jmp(0), Halt(0)] },
            Program { arity: 1, instructions: vec![Dec(0, 4), Dec(0, 3), Jmp(0), Jmp(3), Halt(0)] },
            Program { arity: 2, instructions: vec![Halt(0)] },
        ]
    }

    pub fn get(k: usize) -> Program {
        table().swap_remove(k)
    }
}

/// Gödel number of a program: reserved programs get their table position,
/// everything else the text code of its canonical listing shifted past the table.
pub fn encode(p: &Program) -> BigUint {
    if let Some(k) = builtin::table().iter().position(|b| b == p) {
        return BigUint::from(k);
    }
    textcode::encode_str(&p.to_string()) + BigUint::from(builtin::COUNT)
}

/// Total decoding. Numbers that do not denote a well-formed listing decode to
/// the canonical diverging program.
pub fn decode(n: &BigUint) -> Program {
    if let Some(k) = n.to_usize().filter(|&k| k < builtin::COUNT) {
        return builtin::get(k);
    }
    let text = textcode::decode_str(&(n - BigUint::from(builtin::COUNT)));
    text.and_then(|t| t.parse::<Program>().ok()).unwrap_or_else(|| builtin::get(builtin::DIVERGE))
}
