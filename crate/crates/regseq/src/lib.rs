//! Single-pass instruction sequences over Boolean registers.
//!
//! A program here is a finite list of primitive instructions — plain basic
//! instructions, positive/negative tests, forward jumps, and termination —
//! acting on three kinds of Boolean registers: read-only inputs `in:i`, a
//! write-only output `out`, and read/write/complement auxiliaries `aux:i`.
//! Control only ever moves forward, so every execution takes at most as many
//! steps as the program has instructions.
//!
//! The crate provides:
//!
//! - [`isa`]: the instruction set, a canonical text format, and alphabet
//!   construction for enumeration;
//! - [`machine`]: a reference interpreter (the semantics), an optimized
//!   interpreter, and execution traces;
//! - [`functions`]: Boolean functions as truth tables, the parity family,
//!   and the "computes" relation between programs and functions;
//! - [`generators`]: the two parity-computing program families, one without
//!   auxiliary registers (size `5n-2`) and one using a single auxiliary
//!   register (size `2n+3`);
//! - [`transforms`]: length-preserving complementation, skip removal with
//!   jump retargeting, input elimination, and dead-position masking;
//! - [`search`]: exhaustive minimal-length search with sound, individually
//!   testable pruning rules and deterministic parallel sharding.

pub mod functions;
pub mod generators;
pub mod isa;
pub mod machine;
pub mod search;
pub mod transforms;

pub use isa::{
    build_alphabet, parse, render, Alphabet, AlphabetFlags, BasicInstruction, Command,
    InstructionSequence, PrimitiveInstruction, RegisterName,
};
pub use machine::{execute, trace, Environment, MachineState, Outcome};
