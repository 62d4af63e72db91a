//! Canonical text format for instruction sequences.
//!
//! Grammar:
//!
//! ```text
//! program := instr (" ; " instr)*
//! instr   := "!" | "#"NAT | MODE? basic
//! MODE    := "+" | "-"
//! basic   := reg "." cmd
//! reg     := "in:"NAT | "out" | "aux:"NAT
//! cmd     := "get" | "set:f" | "set:t" | "neg"
//! ```
//!
//! Canonical output joins instructions with `" ; "`, all lowercase. On input,
//! newlines are accepted as an alternative separator and surrounding
//! whitespace is ignored; blank lines are skipped.

use thiserror::Error;

use super::{
    BasicInstruction, Command, InstructionSequence, IsaError, PrimitiveInstruction, RegisterName,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty program")]
    Empty,
    #[error("syntax error at instruction {position}: {message} (token {token:?})")]
    Syntax {
        position: usize,
        token: String,
        message: String,
    },
    #[error("illegal instruction at position {position}: {message} (token {token:?})")]
    Legality {
        position: usize,
        token: String,
        message: String,
    },
}

fn syntax(position: usize, token: &str, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        token: token.to_string(),
        message: message.into(),
    }
}

fn nat(s: &str, position: usize, token: &str, what: &str) -> Result<u32, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(position, token, format!("expected a number for {what}")));
    }
    s.parse()
        .map_err(|_| syntax(position, token, format!("{what} out of range")))
}

fn parse_register(s: &str, position: usize, token: &str) -> Result<RegisterName, ParseError> {
    if s == "out" {
        Ok(RegisterName::Output)
    } else if let Some(idx) = s.strip_prefix("in:") {
        Ok(RegisterName::Input(nat(idx, position, token, "input index")?))
    } else if let Some(idx) = s.strip_prefix("aux:") {
        Ok(RegisterName::Aux(nat(idx, position, token, "auxiliary index")?))
    } else {
        Err(syntax(position, token, "expected in:NAT, out, or aux:NAT"))
    }
}

fn parse_command(s: &str, position: usize, token: &str) -> Result<Command, ParseError> {
    match s {
        "get" => Ok(Command::Get),
        "set:f" => Ok(Command::Set(false)),
        "set:t" => Ok(Command::Set(true)),
        "neg" => Ok(Command::Neg),
        _ => Err(syntax(position, token, "expected get, set:f, set:t, or neg")),
    }
}

fn parse_instruction(token: &str, position: usize) -> Result<PrimitiveInstruction, ParseError> {
    if token == "!" {
        return Ok(PrimitiveInstruction::Halt);
    }
    if let Some(offset) = token.strip_prefix('#') {
        return Ok(PrimitiveInstruction::Jump(nat(
            offset,
            position,
            token,
            "jump offset",
        )?));
    }
    let (mode, rest) = match token.as_bytes().first() {
        Some(b'+') => (Some(true), &token[1..]),
        Some(b'-') => (Some(false), &token[1..]),
        _ => (None, token),
    };
    let Some((reg_text, cmd_text)) = rest.split_once('.') else {
        return Err(syntax(position, token, "expected reg.cmd"));
    };
    let register = parse_register(reg_text, position, token)?;
    let command = parse_command(cmd_text, position, token)?;
    let basic = BasicInstruction::new(register, command).map_err(|e| match e {
        IsaError::ZeroRegisterIndex | IsaError::IllegalCommand { .. } => ParseError::Legality {
            position,
            token: token.to_string(),
            message: e.to_string(),
        },
        IsaError::EmptySequence => unreachable!("not produced by BasicInstruction::new"),
    })?;
    Ok(match mode {
        None => PrimitiveInstruction::Plain(basic),
        Some(true) => PrimitiveInstruction::PosTest(basic),
        Some(false) => PrimitiveInstruction::NegTest(basic),
    })
}

/// Parses program text. Rejects illegal register/command pairs with the
/// offending token and 1-based instruction position.
pub fn parse(text: &str) -> Result<InstructionSequence, ParseError> {
    let mut items = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        for raw in line.split(';') {
            let token = raw.trim();
            let position = items.len() + 1;
            if token.is_empty() {
                return Err(syntax(position, raw, "empty instruction"));
            }
            items.push(parse_instruction(token, position)?);
        }
    }
    InstructionSequence::new(items).map_err(|_| ParseError::Empty)
}

/// Renders a sequence as canonical text: instructions joined by `" ; "`.
pub fn render(seq: &InstructionSequence) -> String {
    let parts: Vec<String> = seq.items().iter().map(|i| i.to_string()).collect();
    parts.join(" ; ")
}
