//! Execution of instruction sequences in an environment of Boolean registers.
//!
//! [`step`] and [`execute`] are the reference semantics: small immutable
//! steps, a fresh state allocated per step. [`fast`] holds an optimized
//! interpreter over flat opcode arrays whose contract is defined solely by
//! agreement with the reference (checked by a differential test).
//!
//! The program counter is 1-based and strictly increases, so every execution
//! finishes within `psize(X)` steps.

use std::fmt;

use crate::isa::{Command, InstructionSequence, PrimitiveInstruction, RegisterName};

pub mod fast;

/// Register file: `n` inputs, one output, `k` auxiliaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Environment {
    pub inputs: Vec<bool>,
    pub output: bool,
    pub auxiliaries: Vec<bool>,
}

impl Environment {
    /// Standard start state: given inputs, output false, `k_aux` auxiliaries
    /// all false.
    pub fn fresh(inputs: Vec<bool>, k_aux: usize) -> Self {
        Environment {
            inputs,
            output: false,
            auxiliaries: vec![false; k_aux],
        }
    }

    /// Start state for input index `bits`, where bit `j` (0-based) holds the
    /// content of `in:{j+1}`.
    pub fn from_input_index(bits: u64, n_inputs: usize, k_aux: usize) -> Self {
        let inputs = (0..n_inputs).map(|j| bits >> j & 1 == 1).collect();
        Environment::fresh(inputs, k_aux)
    }
}

/// Execution state: environment plus 1-based program counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineState {
    pub env: Environment,
    pub pc: usize,
}

impl MachineState {
    pub fn start(env: Environment) -> Self {
        MachineState { env, pc: 1 }
    }
}

/// How an execution ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The termination instruction was executed.
    Terminated(Environment),
    /// A `#0`, or control moved past the last instruction.
    Inaction,
    /// An instruction named a register outside the environment.
    InvalidAccess {
        position: usize,
        register: RegisterName,
    },
}

impl Outcome {
    pub fn is_terminated(&self) -> bool {
        matches!(self, Outcome::Terminated(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Terminated(env) => {
                write!(f, "terminated out={}", if env.output { 1 } else { 0 })
            }
            Outcome::Inaction => write!(f, "inaction"),
            Outcome::InvalidAccess { position, register } => {
                write!(f, "invalid-access position={position} register={register}")
            }
        }
    }
}

/// Result of a single step: either a successor state or a final outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepResult {
    Continue(MachineState),
    Finished(Outcome),
}

/// Executes the basic instruction against the environment, returning the
/// reply, or the out-of-range register.
fn apply_basic(
    env: &mut Environment,
    register: RegisterName,
    command: Command,
) -> Result<bool, RegisterName> {
    match (register, command) {
        (RegisterName::Input(i), Command::Get) => env
            .inputs
            .get(i as usize - 1)
            .copied()
            .ok_or(register),
        (RegisterName::Output, Command::Set(value)) => {
            env.output = value;
            Ok(value)
        }
        (RegisterName::Aux(i), command) => {
            let slot = env
                .auxiliaries
                .get_mut(i as usize - 1)
                .ok_or(register)?;
            Ok(match command {
                Command::Get => *slot,
                Command::Set(value) => {
                    *slot = value;
                    value
                }
                Command::Neg => {
                    *slot = !*slot;
                    *slot
                }
            })
        }
        // Illegal pairs cannot be constructed.
        _ => unreachable!("illegal register/command pair"),
    }
}

/// Performs one step of `seq` from `state`.
///
/// Plain basics apply their effect and proceed; a positive test proceeds on
/// reply true and skips one instruction on false; a negative test reverses the
/// role of the reply; `#l` moves to the l-th next instruction, with `#0`
/// meaning inaction; `!` terminates. Any move past the end is inaction.
pub fn step(state: MachineState, seq: &InstructionSequence) -> StepResult {
    let MachineState { mut env, pc } = state;
    let Some(instr) = seq.get(pc) else {
        return StepResult::Finished(Outcome::Inaction);
    };
    let next = match instr {
        PrimitiveInstruction::Halt => return StepResult::Finished(Outcome::Terminated(env)),
        PrimitiveInstruction::Jump(0) => return StepResult::Finished(Outcome::Inaction),
        PrimitiveInstruction::Jump(l) => pc + *l as usize,
        PrimitiveInstruction::Plain(b) => {
            match apply_basic(&mut env, b.register(), b.command()) {
                Ok(_) => pc + 1,
                Err(register) => {
                    return StepResult::Finished(Outcome::InvalidAccess {
                        position: pc,
                        register,
                    })
                }
            }
        }
        PrimitiveInstruction::PosTest(b) | PrimitiveInstruction::NegTest(b) => {
            let positive = matches!(instr, PrimitiveInstruction::PosTest(_));
            match apply_basic(&mut env, b.register(), b.command()) {
                Ok(reply) => {
                    if reply == positive {
                        pc + 1
                    } else {
                        pc + 2
                    }
                }
                Err(register) => {
                    return StepResult::Finished(Outcome::InvalidAccess {
                        position: pc,
                        register,
                    })
                }
            }
        }
    };
    if next > seq.psize() {
        StepResult::Finished(Outcome::Inaction)
    } else {
        StepResult::Continue(MachineState { env, pc: next })
    }
}

/// Runs `seq` from position 1 in `env` to its outcome.
pub fn execute(seq: &InstructionSequence, env: Environment) -> Outcome {
    let mut state = MachineState::start(env);
    loop {
        match step(state, seq) {
            StepResult::Continue(next) => state = next,
            StepResult::Finished(outcome) => return outcome,
        }
    }
}

/// One executed instruction in a trace: position, the instruction, and the
/// reply its basic instruction produced (`None` for jumps and halt).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub position: usize,
    pub instruction: PrimitiveInstruction,
    pub reply: Option<bool>,
}

/// Full visit log of an execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    pub outcome: Outcome,
}

impl Trace {
    /// 1-based positions executed, in visit order.
    pub fn visited_positions(&self) -> Vec<usize> {
        self.events.iter().map(|e| e.position).collect()
    }
}

/// Like [`execute`], with a log of every visited position and reply.
pub fn trace(seq: &InstructionSequence, env: Environment) -> Trace {
    let mut events = Vec::new();
    let mut state = MachineState::start(env);
    loop {
        if let Some(instr) = seq.get(state.pc) {
            let reply = match instr {
                PrimitiveInstruction::Plain(b)
                | PrimitiveInstruction::PosTest(b)
                | PrimitiveInstruction::NegTest(b) => {
                    // Probe the reply on a scratch copy; the real step below
                    // repeats the effect.
                    let mut scratch = state.env.clone();
                    apply_basic(&mut scratch, b.register(), b.command()).ok()
                }
                _ => None,
            };
            events.push(TraceEvent {
                position: state.pc,
                instruction: *instr,
                reply,
            });
        }
        match step(state, seq) {
            StepResult::Continue(next) => state = next,
            StepResult::Finished(outcome) => return Trace { events, outcome },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isa::parse;

    fn seq(text: &str) -> InstructionSequence {
        parse(text).unwrap()
    }

    #[test]
    fn jump_zero_is_inaction() {
        let outcome = execute(&seq("#0 ; !"), Environment::fresh(vec![], 0));
        assert_eq!(outcome, Outcome::Inaction);
    }

    #[test]
    fn neg_complements_and_proceeds() {
        let state = MachineState::start(Environment::fresh(vec![], 1));
        match step(state, &seq("aux:1.neg ; !")) {
            StepResult::Continue(next) => {
                assert_eq!(next.pc, 2);
                assert_eq!(next.env.auxiliaries, vec![true]);
            }
            other => panic!("expected continue, got {other:?}"),
        }
    }

    #[test]
    fn skip_past_end_is_inaction() {
        let outcome = execute(&seq("+in:1.get"), Environment::fresh(vec![false], 0));
        assert_eq!(outcome, Outcome::Inaction);
        // Proceeding past the end is inaction as well.
        let outcome = execute(&seq("out.set:t"), Environment::fresh(vec![], 0));
        assert_eq!(outcome, Outcome::Inaction);
    }

    #[test]
    fn halt_terminates_with_initial_output_false() {
        match execute(&seq("!"), Environment::fresh(vec![], 0)) {
            Outcome::Terminated(env) => assert!(!env.output),
            other => panic!("expected terminated, got {other:?}"),
        }
    }

    #[test]
    fn foreign_register_is_invalid_access() {
        let outcome = execute(&seq("+in:3.get ; !"), Environment::fresh(vec![false, true], 0));
        assert_eq!(
            outcome,
            Outcome::InvalidAccess {
                position: 1,
                register: RegisterName::Input(3),
            }
        );
        let outcome = execute(&seq("aux:1.neg ; !"), Environment::fresh(vec![], 0));
        assert_eq!(
            outcome,
            Outcome::InvalidAccess {
                position: 1,
                register: RegisterName::Aux(1),
            }
        );
    }

    #[test]
    fn set_replies_with_written_value() {
        // -out.set:f replies false, so the negative test proceeds.
        match execute(&seq("-out.set:f ; ! ; #0"), Environment::fresh(vec![], 0)) {
            Outcome::Terminated(env) => assert!(!env.output),
            other => panic!("expected terminated, got {other:?}"),
        }
        // +out.set:t replies true, so the positive test proceeds.
        match execute(&seq("+out.set:t ; ! ; #0"), Environment::fresh(vec![], 0)) {
            Outcome::Terminated(env) => assert!(env.output),
            other => panic!("expected terminated, got {other:?}"),
        }
    }

    #[test]
    fn trace_records_positions_and_replies() {
        let t = trace(&seq("!"), Environment::fresh(vec![], 0));
        assert_eq!(t.visited_positions(), vec![1]);
        assert_eq!(t.events[0].reply, None);
        assert!(t.outcome.is_terminated());

        let pis1_1 = seq("+in:1.get ; aux:1.neg ; +aux:1.get ; out.set:t ; !");
        let t = trace(&pis1_1, Environment::fresh(vec![true], 1));
        assert_eq!(t.visited_positions(), vec![1, 2, 3, 4, 5]);
        assert_eq!(t.events[0].reply, Some(true));
        assert_eq!(t.events[1].reply, Some(true)); // neg: reply is the new content

        let t = trace(&pis1_1, Environment::fresh(vec![false], 1));
        assert_eq!(t.visited_positions(), vec![1, 3, 5]);
        match t.outcome {
            Outcome::Terminated(env) => assert!(!env.output),
            other => panic!("expected terminated, got {other:?}"),
        }
    }

    #[test]
    fn execution_is_bounded_by_psize() {
        let program = seq("+in:1.get ; #4 ; +in:2.get ; #3 ; #3 ; -in:2.get ; out.set:t ; !");
        for bits in 0..4u64 {
            let env = Environment::from_input_index(bits, 2, 0);
            let mut state = MachineState::start(env);
            let mut steps = 0;
            loop {
                let pc_before = state.pc;
                match step(state, &program) {
                    StepResult::Continue(next) => {
                        assert!(next.pc > pc_before, "pc must strictly increase");
                        state = next;
                    }
                    StepResult::Finished(_) => break,
                }
                steps += 1;
                assert!(steps <= program.psize());
            }
        }
    }
}
