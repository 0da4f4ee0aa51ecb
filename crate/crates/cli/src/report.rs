use std::fmt::{self, Write};

use ceerlab::constructions::InvariantCheck;

/// Structured text report with a fixed field order:
///
/// ```text
/// report: <name>
/// command: <echo>
/// stage: <S>
/// horizon: <N>
/// status: <complete | interrupted at stage k>
/// result:
///   <payload lines>
/// checks:
///   <name>: pass
/// trace: <path | ->
/// ```
#[derive(Debug)]
pub struct Report {
    pub name: String,
    pub command: String,
    pub stage: Option<u64>,
    pub horizon: Option<u64>,
    pub status: String,
    pub result: Vec<String>,
    pub checks: Vec<InvariantCheck>,
    pub trace: Option<String>,
}

impl Report {
    pub fn new(name: &str, command: &str) -> Report {
        Report {
            name: name.to_string(),
            command: command.to_string(),
            stage: None,
            horizon: None,
            status: "complete".to_string(),
            result: Vec::new(),
            checks: Vec::new(),
            trace: None,
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.result.push(text.into());
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "report: {}", self.name)?;
        writeln!(out, "command: {}", self.command)?;
        writeln!(out, "stage: {}", opt(self.stage))?;
        writeln!(out, "horizon: {}", opt(self.horizon))?;
        writeln!(out, "status: {}", self.status)?;
        writeln!(out, "result:")?;
        for line in &self.result {
            writeln!(out, "  {line}")?;
        }
        writeln!(out, "checks:")?;
        if self.checks.is_empty() {
            writeln!(out, "  none")?;
        }
        for check in &self.checks {
            writeln!(out, "  {check}")?;
        }
        writeln!(out, "trace: {}", self.trace.as_deref().unwrap_or("-"))?;
        f.write_str(&out)
    }
}

/// Echo of the arguments, quoting any that contain whitespace or parens.
pub fn echo(args: &[String]) -> String {
    args.iter()
        .map(|a| {
            if a.is_empty() || a.contains(|c: char| c.is_whitespace() || "()\"{}".contains(c)) {
                format!("\"{}\"", a.replace('"', "\\\""))
            } else {
                a.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
