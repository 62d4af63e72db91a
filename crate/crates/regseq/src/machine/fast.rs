//! Optimized interpreter: programs as flat arrays of decoded opcodes,
//! register files as bitmasks. Supports up to 64 input and 64 auxiliary
//! registers, plenty for every search and table the crate performs.
//!
//! Test modes are folded into per-opcode branch deltas at decode time: a
//! plain basic instruction advances by 1 whatever the reply, a positive test
//! advances by 1 on true and 2 on false, a negative test the reverse. For
//! `set` the reply equals the written constant, so the delta collapses to a
//! single number.

use crate::isa::{Command, InstructionSequence, PrimitiveInstruction, RegisterName};

/// Decoded instruction. Register indices are 0-based here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    InGet { idx0: u32, on_true: u8, on_false: u8 },
    OutSet { value: bool, delta: u8 },
    AuxGet { idx0: u32, on_true: u8, on_false: u8 },
    AuxSet { idx0: u32, value: bool, delta: u8 },
    AuxNeg { idx0: u32, on_true: u8, on_false: u8 },
    Jump { offset: u32 },
    Halt,
}

/// Where control goes after applying one opcode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ctrl {
    Goto(usize),
    Terminated,
    Inaction,
    Invalid(RegisterName),
}

impl Op {
    pub fn decode(instr: &PrimitiveInstruction) -> Op {
        let (basic, on_true, on_false) = match instr {
            PrimitiveInstruction::Plain(b) => (b, 1, 1),
            PrimitiveInstruction::PosTest(b) => (b, 1, 2),
            PrimitiveInstruction::NegTest(b) => (b, 2, 1),
            PrimitiveInstruction::Jump(l) => return Op::Jump { offset: *l },
            PrimitiveInstruction::Halt => return Op::Halt,
        };
        match (basic.register(), basic.command()) {
            (RegisterName::Input(i), Command::Get) => Op::InGet {
                idx0: i - 1,
                on_true,
                on_false,
            },
            (RegisterName::Output, Command::Set(value)) => Op::OutSet {
                value,
                delta: if value { on_true } else { on_false },
            },
            (RegisterName::Aux(i), Command::Get) => Op::AuxGet {
                idx0: i - 1,
                on_true,
                on_false,
            },
            (RegisterName::Aux(i), Command::Set(value)) => Op::AuxSet {
                idx0: i - 1,
                value,
                delta: if value { on_true } else { on_false },
            },
            (RegisterName::Aux(i), Command::Neg) => Op::AuxNeg {
                idx0: i - 1,
                on_true,
                on_false,
            },
            _ => unreachable!("illegal register/command pair"),
        }
    }

    /// Applies the opcode at position `pc` to the register state.
    #[inline(always)]
    pub fn apply(
        &self,
        pc: usize,
        out: &mut bool,
        aux: &mut u64,
        inputs: u64,
        n_inputs: u32,
        k_aux: u32,
    ) -> Ctrl {
        match *self {
            Op::InGet {
                idx0,
                on_true,
                on_false,
            } => {
                if idx0 >= n_inputs {
                    return Ctrl::Invalid(RegisterName::Input(idx0 + 1));
                }
                let reply = inputs >> idx0 & 1 == 1;
                Ctrl::Goto(pc + if reply { on_true } else { on_false } as usize)
            }
            Op::OutSet { value, delta } => {
                *out = value;
                Ctrl::Goto(pc + delta as usize)
            }
            Op::AuxGet {
                idx0,
                on_true,
                on_false,
            } => {
                if idx0 >= k_aux {
                    return Ctrl::Invalid(RegisterName::Aux(idx0 + 1));
                }
                let reply = *aux >> idx0 & 1 == 1;
                Ctrl::Goto(pc + if reply { on_true } else { on_false } as usize)
            }
            Op::AuxSet { idx0, value, delta } => {
                if idx0 >= k_aux {
                    return Ctrl::Invalid(RegisterName::Aux(idx0 + 1));
                }
                if value {
                    *aux |= 1 << idx0;
                } else {
                    *aux &= !(1 << idx0);
                }
                Ctrl::Goto(pc + delta as usize)
            }
            Op::AuxNeg {
                idx0,
                on_true,
                on_false,
            } => {
                if idx0 >= k_aux {
                    return Ctrl::Invalid(RegisterName::Aux(idx0 + 1));
                }
                *aux ^= 1 << idx0;
                let reply = *aux >> idx0 & 1 == 1;
                Ctrl::Goto(pc + if reply { on_true } else { on_false } as usize)
            }
            Op::Jump { offset } => {
                if offset == 0 {
                    Ctrl::Inaction
                } else {
                    Ctrl::Goto(pc + offset as usize)
                }
            }
            Op::Halt => Ctrl::Terminated,
        }
    }
}

/// Outcome of an optimized run; carries only what the bitmask state knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastOutcome {
    Terminated { output: bool },
    Inaction,
    InvalidAccess { position: usize, register: RegisterName },
}

impl FastOutcome {
    /// Agreement with a reference outcome: same kind, and same final output /
    /// faulting position and register.
    pub fn agrees_with(&self, reference: &super::Outcome) -> bool {
        match (self, reference) {
            (FastOutcome::Terminated { output }, super::Outcome::Terminated(env)) => {
                *output == env.output
            }
            (FastOutcome::Inaction, super::Outcome::Inaction) => true,
            (
                FastOutcome::InvalidAccess { position, register },
                super::Outcome::InvalidAccess {
                    position: ref_pos,
                    register: ref_reg,
                },
            ) => position == ref_pos && register == ref_reg,
            _ => false,
        }
    }
}

/// Packs `in:1..` contents into a bitmask, `in:{j+1}` at bit `j`.
pub fn pack_inputs(inputs: &[bool]) -> u64 {
    assert!(inputs.len() <= 64, "optimized interpreter supports at most 64 inputs");
    inputs
        .iter()
        .enumerate()
        .fold(0, |mask, (j, &b)| mask | (b as u64) << j)
}

/// An instruction sequence decoded for repeated execution.
#[derive(Debug, Clone)]
pub struct CompiledProgram {
    ops: Vec<Op>,
}

impl CompiledProgram {
    pub fn compile(seq: &InstructionSequence) -> Self {
        CompiledProgram {
            ops: seq.items().iter().map(Op::decode).collect(),
        }
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    /// Runs from position 1 with the given input mask, output and
    /// auxiliaries starting false.
    pub fn run(&self, inputs: u64, n_inputs: u32, k_aux: u32) -> FastOutcome {
        debug_assert!(n_inputs <= 64 && k_aux <= 64);
        let len = self.ops.len();
        let mut pc = 1usize;
        let mut out = false;
        let mut aux = 0u64;
        loop {
            if pc > len {
                return FastOutcome::Inaction;
            }
            match self.ops[pc - 1].apply(pc, &mut out, &mut aux, inputs, n_inputs, k_aux) {
                Ctrl::Goto(next) => pc = next,
                Ctrl::Terminated => return FastOutcome::Terminated { output: out },
                Ctrl::Inaction => return FastOutcome::Inaction,
                Ctrl::Invalid(register) => {
                    return FastOutcome::InvalidAccess { position: pc, register }
                }
            }
        }
    }
}
