//! Line-oriented assembly: one instruction per line (`INC r`, `JZDEC r t`,
//! `JMP t`, `HALT`). Blank lines and text after `;` or `#` are ignored.

use thiserror::Error;

use super::{Instruction, Program};

/// Operands above this bound would make the program index astronomically large.
pub const MAX_OPERAND: u64 = 1023;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct AsmError {
    pub line: usize,
    pub message: String,
}

pub fn assemble(text: &str) -> Result<Program, AsmError> {
    let mut code = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split([';', '#']).next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| AsmError { line, message };
        let mut words = body.split_whitespace();
        let mnemonic = words.next().unwrap_or_default().to_ascii_uppercase();
        let operands = words
            .map(|w| {
                let v: u64 = w.parse().map_err(|_| err(format!("bad operand `{w}`")))?;
                if v > MAX_OPERAND {
                    return Err(err(format!("operand {v} exceeds {MAX_OPERAND}")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ins = match (mnemonic.as_str(), operands.as_slice()) {
            ("INC", [r]) => Instruction::Inc(*r),
            ("JZDEC", [r, t]) => Instruction::JzDec(*r, *t),
            ("JMP", [t]) => Instruction::Jmp(*t),
            ("HALT", []) => Instruction::Halt,
            ("INC" | "JZDEC" | "JMP" | "HALT", _) => {
                return Err(err(format!("wrong operand count for {mnemonic}")))
            }
            _ => return Err(err(format!("unknown mnemonic `{mnemonic}`"))),
        };
        code.push(ins);
    }
    Ok(Program::new(code))
}
