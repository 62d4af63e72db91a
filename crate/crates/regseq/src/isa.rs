//! Instructions, instruction sequences, the canonical text format, and
//! instruction alphabets for enumeration.
//!
//! Register/command legality is enforced at construction time: input
//! registers admit only `get`, the output register admits only `set`, and
//! auxiliary registers admit `get`, `set` and `neg`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

mod text;

pub use text::{parse, render, ParseError};

/// Name of a Boolean register. Indices are 1-based; the output register is
/// unindexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegisterName {
    /// `in:i`, read-only input register.
    Input(u32),
    /// `out`, write-only output register.
    Output,
    /// `aux:i`, read/write/complement auxiliary register.
    Aux(u32),
}

impl RegisterName {
    /// Sort key: inputs by index, then the output, then auxiliaries by index.
    fn rank(self) -> (u8, u32) {
        match self {
            RegisterName::Input(i) => (0, i),
            RegisterName::Output => (1, 0),
            RegisterName::Aux(i) => (2, i),
        }
    }
}

impl fmt::Display for RegisterName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegisterName::Input(i) => write!(f, "in:{i}"),
            RegisterName::Output => write!(f, "out"),
            RegisterName::Aux(i) => write!(f, "aux:{i}"),
        }
    }
}

/// Command carried out on a named register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    /// Reply with the register content; no change.
    Get,
    /// Write the value; reply with it.
    Set(bool),
    /// Complement the content; reply with the new content.
    Neg,
}

impl Command {
    fn rank(self) -> u8 {
        match self {
            Command::Get => 0,
            Command::Set(false) => 1,
            Command::Set(true) => 2,
            Command::Neg => 3,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Get => write!(f, "get"),
            Command::Set(false) => write!(f, "set:f"),
            Command::Set(true) => write!(f, "set:t"),
            Command::Neg => write!(f, "neg"),
        }
    }
}

/// Errors from constructing ISA values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsaError {
    #[error("register index must be >= 1")]
    ZeroRegisterIndex,
    #[error("command {command} is not legal on register {register}")]
    IllegalCommand {
        register: RegisterName,
        command: Command,
    },
    #[error("an instruction sequence must contain at least one instruction")]
    EmptySequence,
}

/// A register/command pair, e.g. `in:2.get` or `aux:1.neg`.
///
/// Only the legal pairs exist: inputs are read-only, the output is
/// write-only, auxiliaries allow all three commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasicInstruction {
    register: RegisterName,
    command: Command,
}

impl BasicInstruction {
    pub fn new(register: RegisterName, command: Command) -> Result<Self, IsaError> {
        match register {
            RegisterName::Input(0) | RegisterName::Aux(0) => {
                return Err(IsaError::ZeroRegisterIndex)
            }
            RegisterName::Input(_) if command != Command::Get => {
                return Err(IsaError::IllegalCommand { register, command })
            }
            RegisterName::Output if !matches!(command, Command::Set(_)) => {
                return Err(IsaError::IllegalCommand { register, command })
            }
            _ => {}
        }
        Ok(BasicInstruction { register, command })
    }

    pub fn input_get(i: u32) -> Self {
        Self::new(RegisterName::Input(i), Command::Get).expect("input get is legal")
    }

    pub fn output_set(value: bool) -> Self {
        BasicInstruction {
            register: RegisterName::Output,
            command: Command::Set(value),
        }
    }

    pub fn aux_get(i: u32) -> Self {
        Self::new(RegisterName::Aux(i), Command::Get).expect("aux get is legal")
    }

    pub fn aux_set(i: u32, value: bool) -> Self {
        Self::new(RegisterName::Aux(i), Command::Set(value)).expect("aux set is legal")
    }

    pub fn aux_neg(i: u32) -> Self {
        Self::new(RegisterName::Aux(i), Command::Neg).expect("aux neg is legal")
    }

    pub fn register(&self) -> RegisterName {
        self.register
    }

    pub fn command(&self) -> Command {
        self.command
    }
}

impl fmt::Display for BasicInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.register, self.command)
    }
}

/// One of the five kinds of primitive instructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimitiveInstruction {
    /// Execute the basic instruction, ignore the reply, proceed.
    Plain(BasicInstruction),
    /// `+a`: execute `a`; proceed on reply true, skip one instruction on false.
    PosTest(BasicInstruction),
    /// `-a`: execute `a`; proceed on reply false, skip one instruction on true.
    NegTest(BasicInstruction),
    /// `#l`: proceed with the l-th next instruction; `#0` means inaction.
    Jump(u32),
    /// `!`: terminate execution.
    Halt,
}

impl PrimitiveInstruction {
    pub fn basic(&self) -> Option<&BasicInstruction> {
        match self {
            PrimitiveInstruction::Plain(b)
            | PrimitiveInstruction::PosTest(b)
            | PrimitiveInstruction::NegTest(b) => Some(b),
            _ => None,
        }
    }

    /// Canonical symbol order: basic-instruction forms sorted by register,
    /// then command, then mode (plain, `+`, `-`); then jumps by ascending
    /// offset; then `!`.
    fn rank(&self) -> (u8, u8, u32, u8, u8, u32) {
        match self {
            PrimitiveInstruction::Plain(b) => {
                let (rc, ri) = b.register.rank();
                (0, rc, ri, b.command.rank(), 0, 0)
            }
            PrimitiveInstruction::PosTest(b) => {
                let (rc, ri) = b.register.rank();
                (0, rc, ri, b.command.rank(), 1, 0)
            }
            PrimitiveInstruction::NegTest(b) => {
                let (rc, ri) = b.register.rank();
                (0, rc, ri, b.command.rank(), 2, 0)
            }
            PrimitiveInstruction::Jump(l) => (1, 0, 0, 0, 0, *l),
            PrimitiveInstruction::Halt => (2, 0, 0, 0, 0, 0),
        }
    }
}

impl PartialOrd for PrimitiveInstruction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimitiveInstruction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for PrimitiveInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitiveInstruction::Plain(b) => write!(f, "{b}"),
            PrimitiveInstruction::PosTest(b) => write!(f, "+{b}"),
            PrimitiveInstruction::NegTest(b) => write!(f, "-{b}"),
            PrimitiveInstruction::Jump(l) => write!(f, "#{l}"),
            PrimitiveInstruction::Halt => write!(f, "!"),
        }
    }
}

/// A finite, non-empty instruction sequence. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InstructionSequence {
    items: Vec<PrimitiveInstruction>,
}

impl InstructionSequence {
    pub fn new(items: Vec<PrimitiveInstruction>) -> Result<Self, IsaError> {
        if items.is_empty() {
            return Err(IsaError::EmptySequence);
        }
        Ok(InstructionSequence { items })
    }

    /// Length of the sequence (the paper's size measure).
    pub fn psize(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[PrimitiveInstruction] {
        &self.items
    }

    /// Instruction at 1-based position `pos`.
    pub fn get(&self, pos: usize) -> Option<&PrimitiveInstruction> {
        if pos == 0 {
            None
        } else {
            self.items.get(pos - 1)
        }
    }

    /// Highest input and auxiliary register indices mentioned, 0 when none.
    pub fn max_register_indices(&self) -> (u32, u32) {
        let mut max_in = 0;
        let mut max_aux = 0;
        for item in &self.items {
            if let Some(b) = item.basic() {
                match b.register() {
                    RegisterName::Input(i) => max_in = max_in.max(i),
                    RegisterName::Aux(i) => max_aux = max_aux.max(i),
                    RegisterName::Output => {}
                }
            }
        }
        (max_in, max_aux)
    }

    pub fn max_input_index(&self) -> u32 {
        self.max_register_indices().0
    }

    pub fn max_aux_index(&self) -> u32 {
        self.max_register_indices().1
    }
}

impl fmt::Display for InstructionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl FromStr for InstructionSequence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for InstructionSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&render(self))
    }
}

impl<'de> Deserialize<'de> for InstructionSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Which symbols an alphabet includes beyond the always-present core.
///
/// `allow_neg` and `allow_aux_set` select auxiliary commands; the remaining
/// flags exist so that pruning rules can exclude symbols that are redundant
/// for existence queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetFlags {
    pub allow_neg: bool,
    pub allow_aux_set: bool,
    pub include_jump0: bool,
    pub include_jump1: bool,
    pub include_plain_input_get: bool,
}

impl Default for AlphabetFlags {
    fn default() -> Self {
        AlphabetFlags {
            allow_neg: true,
            allow_aux_set: true,
            include_jump0: true,
            include_jump1: true,
            include_plain_input_get: true,
        }
    }
}

/// An ordered set of primitive instructions used as enumeration symbols.
///
/// Symbols are stored in canonical order, so lexicographic enumeration over
/// symbol indices matches the canonical symbol order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<PrimitiveInstruction>,
}

impl Alphabet {
    /// Builds an alphabet from an explicit symbol list: sorts into canonical
    /// order and removes duplicates.
    pub fn from_symbols(mut symbols: Vec<PrimitiveInstruction>) -> Self {
        symbols.sort();
        symbols.dedup();
        Alphabet { symbols }
    }

    pub fn symbols(&self) -> &[PrimitiveInstruction] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, instr: &PrimitiveInstruction) -> bool {
        self.symbols.binary_search(instr).is_ok()
    }
}

/// Builds the alphabet over registers `in:1..=n_inputs`, `out`, and
/// `aux:1..=k_aux`: plain/positive-test/negative-test forms of every legal
/// basic instruction (subject to `flags`), jumps `#0..=#max_jump` (subject to
/// `flags`), and `!`.
pub fn build_alphabet(n_inputs: u32, k_aux: u32, max_jump: u32, flags: &AlphabetFlags) -> Alphabet {
    let mut symbols = Vec::new();
    let mut push_modes = |basic: BasicInstruction, include_plain: bool| {
        if include_plain {
            symbols.push(PrimitiveInstruction::Plain(basic));
        }
        symbols.push(PrimitiveInstruction::PosTest(basic));
        symbols.push(PrimitiveInstruction::NegTest(basic));
    };
    for i in 1..=n_inputs {
        push_modes(BasicInstruction::input_get(i), flags.include_plain_input_get);
    }
    push_modes(BasicInstruction::output_set(false), true);
    push_modes(BasicInstruction::output_set(true), true);
    for i in 1..=k_aux {
        push_modes(BasicInstruction::aux_get(i), true);
        if flags.allow_aux_set {
            push_modes(BasicInstruction::aux_set(i, false), true);
            push_modes(BasicInstruction::aux_set(i, true), true);
        }
        if flags.allow_neg {
            push_modes(BasicInstruction::aux_neg(i), true);
        }
    }
    for l in 0..=max_jump {
        if l == 0 && !flags.include_jump0 {
            continue;
        }
        if l == 1 && !flags.include_jump1 {
            continue;
        }
        symbols.push(PrimitiveInstruction::Jump(l));
    }
    symbols.push(PrimitiveInstruction::Halt);
    let alphabet = Alphabet::from_symbols(symbols);
    debug_assert_eq!(alphabet.symbols.len(), {
        let mut dedup = alphabet.symbols.clone();
        dedup.dedup();
        dedup.len()
    });
    alphabet
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> InstructionSequence {
        parse(text).expect("test program parses")
    }

    #[test]
    fn legality_matches_basic_instruction_set() {
        assert!(BasicInstruction::new(RegisterName::Input(1), Command::Get).is_ok());
        assert!(BasicInstruction::new(RegisterName::Input(1), Command::Set(true)).is_err());
        assert!(BasicInstruction::new(RegisterName::Input(1), Command::Neg).is_err());
        assert!(BasicInstruction::new(RegisterName::Output, Command::Set(false)).is_ok());
        assert!(BasicInstruction::new(RegisterName::Output, Command::Get).is_err());
        assert!(BasicInstruction::new(RegisterName::Output, Command::Neg).is_err());
        assert!(BasicInstruction::new(RegisterName::Aux(3), Command::Get).is_ok());
        assert!(BasicInstruction::new(RegisterName::Aux(3), Command::Set(true)).is_ok());
        assert!(BasicInstruction::new(RegisterName::Aux(3), Command::Neg).is_ok());
        assert_eq!(
            BasicInstruction::new(RegisterName::Input(0), Command::Get),
            Err(IsaError::ZeroRegisterIndex)
        );
    }

    #[test]
    fn psize_counts_items() {
        assert_eq!(seq("!").psize(), 1);
        assert_eq!(seq("+in:1.get ; out.set:t ; !").psize(), 3);
    }

    #[test]
    fn max_register_indices_examples() {
        assert_eq!(seq("!").max_register_indices(), (0, 0));
        assert_eq!(
            seq("+in:1.get ; aux:1.neg ; +in:2.get ; aux:1.neg ; +aux:1.get ; out.set:t ; !")
                .max_register_indices(),
            (2, 1)
        );
        // No aux instruction occurs in the no-aux parity program.
        let pis0_3 = "+in:1.get ; #4 ; +in:2.get ; #3 ; #3 ; -in:2.get ; \
                      #4 ; +in:3.get ; #3 ; #3 ; -in:3.get ; out.set:t ; !";
        assert_eq!(seq(pis0_3).max_register_indices(), (3, 0));
    }

    #[test]
    fn empty_sequence_rejected() {
        assert_eq!(
            InstructionSequence::new(Vec::new()),
            Err(IsaError::EmptySequence)
        );
    }

    #[test]
    fn canonical_symbol_order() {
        let a = build_alphabet(2, 1, 2, &AlphabetFlags::default());
        let rendered: Vec<String> = a.symbols().iter().map(|s| s.to_string()).collect();
        assert_eq!(
            rendered,
            vec![
                "in:1.get", "+in:1.get", "-in:1.get", "in:2.get", "+in:2.get", "-in:2.get",
                "out.set:f", "+out.set:f", "-out.set:f", "out.set:t", "+out.set:t", "-out.set:t",
                "aux:1.get", "+aux:1.get", "-aux:1.get", "aux:1.set:f", "+aux:1.set:f",
                "-aux:1.set:f", "aux:1.set:t", "+aux:1.set:t", "-aux:1.set:t", "aux:1.neg",
                "+aux:1.neg", "-aux:1.neg", "#0", "#1", "#2", "!",
            ]
        );
        let mut sorted = a.symbols().to_vec();
        sorted.sort();
        assert_eq!(sorted, a.symbols());
    }

    /// Independent count: enumerate every conceivable (register, command,
    /// mode) triple and keep the legal, flag-admitted ones.
    fn count_by_enumeration(n: u32, k: u32, max_jump: u32, flags: &AlphabetFlags) -> usize {
        let mut count = 0;
        let mut registers = vec![RegisterName::Output];
        registers.extend((1..=n).map(RegisterName::Input));
        registers.extend((1..=k).map(RegisterName::Aux));
        for reg in registers {
            for cmd in [
                Command::Get,
                Command::Set(false),
                Command::Set(true),
                Command::Neg,
            ] {
                let Ok(basic) = BasicInstruction::new(reg, cmd) else {
                    continue;
                };
                let aux_allowed = match (reg, cmd) {
                    (RegisterName::Aux(_), Command::Set(_)) => flags.allow_aux_set,
                    (RegisterName::Aux(_), Command::Neg) => flags.allow_neg,
                    _ => true,
                };
                if !aux_allowed {
                    continue;
                }
                for mode in 0..3 {
                    if mode == 0
                        && matches!(reg, RegisterName::Input(_))
                        && !flags.include_plain_input_get
                    {
                        continue;
                    }
                    let _ = (basic, mode);
                    count += 1;
                }
            }
        }
        for l in 0..=max_jump {
            if (l == 0 && !flags.include_jump0) || (l == 1 && !flags.include_jump1) {
                continue;
            }
            count += 1;
        }
        count + 1 // halt
    }

    #[test]
    fn alphabet_sizes_match_enumeration() {
        let all = AlphabetFlags::default();
        // 12 basic-instruction forms + 8 jumps + halt.
        assert_eq!(build_alphabet(2, 0, 7, &all).len(), 21);
        // out.set forms (6) + #0 + halt.
        assert_eq!(build_alphabet(0, 0, 0, &all).len(), 8);
        for n in 0..=3 {
            for k in 0..=2 {
                for max_jump in 0..=4 {
                    for flags in [
                        all,
                        AlphabetFlags {
                            allow_neg: false,
                            ..all
                        },
                        AlphabetFlags {
                            allow_aux_set: false,
                            include_jump0: false,
                            ..all
                        },
                        AlphabetFlags {
                            include_jump1: false,
                            include_plain_input_get: false,
                            ..all
                        },
                    ] {
                        let built = build_alphabet(n, k, max_jump, &flags);
                        assert_eq!(
                            built.len(),
                            count_by_enumeration(n, k, max_jump, &flags),
                            "n={n} k={k} max_jump={max_jump} {flags:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn neg_flag_removes_only_neg_symbols() {
        let a = build_alphabet(
            1,
            1,
            2,
            &AlphabetFlags {
                allow_neg: false,
                ..AlphabetFlags::default()
            },
        );
        assert!(a.contains(&PrimitiveInstruction::Plain(BasicInstruction::aux_get(1))));
        assert!(a.contains(&PrimitiveInstruction::Plain(BasicInstruction::aux_set(1, true))));
        assert!(!a.contains(&PrimitiveInstruction::Plain(BasicInstruction::aux_neg(1))));
        assert!(!a.contains(&PrimitiveInstruction::PosTest(BasicInstruction::aux_neg(1))));
    }

    #[test]
    fn alphabet_symbols_are_legal() {
        let a = build_alphabet(3, 2, 5, &AlphabetFlags::default());
        for sym in a.symbols() {
            if let Some(b) = sym.basic() {
                assert!(BasicInstruction::new(b.register(), b.command()).is_ok());
            }
        }
    }
}
