//! A small label-resolving assembler for hand-written programs.

use num_bigint::BigUint;

use super::program::{Instr, PrimOp, Program, Reg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Label(usize);

enum Item {
    Ready(Instr),
    Dec(Reg, Label),
    Jmp(Label),
}

pub struct Asm {
    arity: usize,
    items: Vec<Item>,
    labels: Vec<Option<usize>>,
    next_reg: Reg,
    zero: Reg,
}

impl Asm {
    pub fn new(arity: usize) -> Asm {
        Asm { arity, items: Vec::new(), labels: Vec::new(), next_reg: arity + 1, zero: arity }
    }

    pub fn input(&self, k: usize) -> Reg {
        assert!(k < self.arity);
        k
    }

    /// A register that is never written.
    pub fn zero(&self) -> Reg {
        self.zero
    }

    pub fn reg(&mut self) -> Reg {
        self.next_reg += 1;
        self.next_reg - 1
    }

    pub fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    pub fn bind(&mut self, l: Label) {
        assert!(self.labels[l.0].is_none(), "label bound twice");
        self.labels[l.0] = Some(self.items.len());
    }

    fn emit(&mut self, i: Instr) {
        self.items.push(Item::Ready(i));
    }

    pub fn inc(&mut self, r: Reg) {
        self.emit(Instr::Inc(r));
    }

    pub fn dec(&mut self, r: Reg, if_zero: Label) {
        self.items.push(Item::Dec(r, if_zero));
    }

    pub fn jmp(&mut self, l: Label) {
        self.items.push(Item::Jmp(l));
    }

    pub fn halt(&mut self, r: Reg) {
        self.emit(Instr::Halt(r));
    }

    pub fn konst(&mut self, r: Reg, n: impl Into<BigUint>) {
        self.emit(Instr::Const(r, n.into()));
    }

    /// Fresh register loaded with a constant.
    pub fn constant(&mut self, n: impl Into<BigUint>) -> Reg {
        let r = self.reg();
        self.konst(r, n);
        r
    }

    pub fn call(&mut self, dst: Reg, prog: Reg, args: &[Reg]) {
        self.emit(Instr::Call { dst, prog, args: args.to_vec() });
    }

    pub fn smn(&mut self, dst: Reg, prog: Reg, args: &[Reg]) {
        self.emit(Instr::Smn { dst, prog, args: args.to_vec() });
    }

    pub fn step(&mut self, dst: Reg, prog: Reg, fuel: Reg, args: &[Reg]) {
        self.emit(Instr::Step { dst, prog, fuel, args: args.to_vec() });
    }

    pub fn prim(&mut self, dst: Reg, op: PrimOp, args: &[Reg]) {
        self.emit(Instr::Prim { dst, op, args: args.to_vec() });
    }

    pub fn mov(&mut self, dst: Reg, src: Reg) {
        let z = self.zero;
        self.prim(dst, PrimOp::Add, &[src, z]);
    }

    /// Jumps when `r` is zero, leaving `r` intact.
    pub fn jump_if_zero(&mut self, r: Reg, l: Label) {
        let t = self.reg();
        self.mov(t, r);
        self.dec(t, l);
    }

    pub fn jump_if_nonzero(&mut self, r: Reg, l: Label) {
        let skip = self.label();
        self.jump_if_zero(r, skip);
        self.jmp(l);
        self.bind(skip);
    }

    /// Loops forever (a self-jump, which the interpreter short-circuits).
    pub fn diverge(&mut self) {
        let l = self.label();
        self.bind(l);
        self.jmp(l);
    }

    pub fn finish(self) -> Program {
        let resolve = |l: Label| self.labels[l.0].expect("unbound label");
        let instructions = self
            .items
            .iter()
            .map(|it| match it {
                Item::Ready(i) => i.clone(),
                Item::Dec(r, l) => Instr::Dec(*r, resolve(*l)),
                Item::Jmp(l) => Instr::Jmp(resolve(*l)),
            })
            .collect();
        Program::new(self.arity, instructions).expect("assembled program is well formed")
    }
}
