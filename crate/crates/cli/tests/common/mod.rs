//! Recorded CLI invocations shared by the golden test and the acceptance
//! suite. Commands run in a scratch directory holding copies of the
//! fixtures, so paths in reports stay relative.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
    /// Trace file the command writes, appended to the golden output.
    pub trace: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, env: &[], trace: None }
}

const fn traced(name: &'static str, args: &'static [&'static str], trace: &'static str) -> Case {
    Case { name, args, env: &[], trace: Some(trace) }
}

pub const GOLDEN: &[Case] = &[
    case("decide-mod2", &["decide", "(mod 2)", "--stage", "10", "1", "3"]),
    Case { name: "decide-env-stage", args: &["decide", "(mod 2)", "1", "3"], env: &[("CEERLAB_STAGES", "3")], trace: None },
    case("classes-intervals", &["classes", "(intervals 2 2)", "--stage", "10", "--max", "4"]),
    case("classes-spec-file", &["classes", "join.spec", "--stage", "30", "--max", "8"]),
    case("classes-pending-restriction", &["classes", "(restrict (mod 2) 8)", "--stage", "10", "--max", "3"]),
    case("principal-id", &["principal", "(id)", "--stage", "5", "--max", "3"]),
    Case { name: "principal-index-env", args: &["principal", "(mod 3)", "--index", "2"], env: &[("CEERLAB_STAGES", "50"), ("CEERLAB_HORIZON", "10")], trace: None },
    traced("allhigh", &["construct", "allhigh", "--stages", "200", "--horizon", "40", "--trace", "runs/allhigh.trace"], "runs/allhigh.trace"),
    traced("weakarray-intervals", &["construct", "weakarray", "--spec", "(intervals 2 2 2 2)", "--stages", "50", "--horizon", "12"], "weakarray.trace"),
    traced("weakarray-id", &["construct", "weakarray", "--spec", "(id)", "--stages", "20", "--horizon", "20"], "weakarray.trace"),
    traced("postsimple", &["construct", "postsimple", "--stages", "100", "--census", "20", "--horizon", "50"], "postsimple.trace"),
    traced("kk-free", &["construct", "kk", "--algebra", "unary_free.alg", "--depth", "10", "--stages", "100", "--horizon", "50"], "kk.trace"),
    traced("kk-mod3", &["construct", "kk", "--algebra", "unary_mod3.alg", "--stages", "100", "--horizon", "50", "--trace", "mod3.trace"], "mod3.trace"),
    case("semigroup-classify", &["semigroup", "classify", "aabaa", "aba", "bbab", "abba"]),
    case("semigroup-decide-sr", &["semigroup", "decide", "--variant", "sr", "--spec", "(idn 1)", "--stage", "5", "aba", "abba"]),
    case("semigroup-decide-fincl", &["semigroup", "decide", "--variant", "fincl", "--spec", "(intervals 2)", "--stage", "10", "aabaa", "aabbaa"]),
    case("semigroup-tojoin", &["semigroup", "tojoin", "abbba"]),
    case("semigroup-fromjoin", &["semigroup", "fromjoin", "7"]),
    case("semigroup-closure", &["semigroup", "closure", "--spec", "(intervals 2)", "--stage", "10", "abaaba"]),
    case("semigroup-classsize", &["semigroup", "classsize", "--spec", "(intervals 2)", "--stage", "10", "--cap", "1000", "abaaba"]),
    case("reduce-doubling", &["reduce", "--asm", "doubling.asm", "--from", "(mod 3)", "--to", "(mod 6)", "--max", "30", "--stage", "40"]),
    case("reduce-identity-backward", &["reduce", "--f", "0", "--from", "(id)", "--to", "(mod 2)", "--max", "10", "--stage", "20"]),
    case("reduce-into-join", &["reduce", "--asm", "doubling.asm", "--from", "(mod 3)", "--to", "(join (mod 3) (id))", "--max", "30", "--stage", "40"]),
    case("assemble", &["assemble", "doubling.asm"]),
    case("disasm", &["disasm", "2"]),
];

/// An error path: expected exit code and a fragment of stderr.
pub struct ErrorCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
    pub stderr: &'static str,
}

pub const ERRORS: &[ErrorCase] = &[
    ErrorCase { name: "inline spec syntax", args: &["decide", "(mod", "1", "2"], code: 2, stderr: "spec: 1:" },
    ErrorCase { name: "spec file syntax", args: &["classes", "bad.spec"], code: 2, stderr: "bad.spec: 2:4" },
    ErrorCase { name: "missing spec file", args: &["decide", "nowhere.spec", "1", "2"], code: 2, stderr: "nowhere.spec" },
    ErrorCase { name: "malformed spec", args: &["decide", "(idn 0)", "1", "2"], code: 2, stderr: "idn needs" },
    ErrorCase { name: "word alphabet", args: &["semigroup", "classify", "abc"], code: 2, stderr: "word `abc`" },
    ErrorCase { name: "empty word", args: &["semigroup", "tojoin", ""], code: 2, stderr: "empty word" },
    ErrorCase { name: "assembly", args: &["assemble", "bad.asm"], code: 2, stderr: "bad.asm: line 2" },
    ErrorCase { name: "algebra file", args: &["construct", "kk", "--algebra", "bad.alg"], code: 2, stderr: "bad.alg: line 2" },
    ErrorCase { name: "program index", args: &["disasm", "x1"], code: 2, stderr: "bad program index" },
    ErrorCase { name: "usage", args: &["decide", "(id)"], code: 2, stderr: "Usage" },
    ErrorCase { name: "horizon", args: &["principal", "(mod 3)", "--stage", "50", "--max", "10", "--index", "5"], code: 3, stderr: "insufficient horizon" },
    ErrorCase {
        name: "timeout",
        args: &["construct", "allhigh", "--stages", "100000", "--timeout-ms", "50", "--trace", "timeout.trace"],
        code: 4,
        stderr: "",
    },
    ErrorCase { name: "operation budget", args: &["construct", "kk", "--algebra", "diverging.alg", "--budget", "100"], code: 4, stderr: "budget exhausted" },
    ErrorCase {
        name: "partial map",
        args: &["reduce", "--asm", "even_only.asm", "--from", "(id)", "--to", "(id)", "--max", "6", "--budget", "1000"],
        code: 5,
        stderr: "inputs 1 3 5",
    },
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// A scratch directory with every fixture copied in.
pub fn scratch() -> tempfile::TempDir {
    let dir = tempfile::tempdir().expect("tempdir");
    for entry in fs::read_dir(fixtures()).expect("fixtures") {
        let entry = entry.expect("fixture entry");
        fs::copy(entry.path(), dir.path().join(entry.file_name())).expect("copy fixture");
    }
    fs::create_dir(dir.path().join("runs")).expect("runs dir");
    dir
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn ceerlab(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_ceerlab"))
        .args(args)
        .current_dir(dir)
        .env_remove("CEERLAB_STAGES")
        .env_remove("CEERLAB_HORIZON")
        .envs(env.iter().copied())
        .output()
        .expect("run ceerlab");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Golden text of a case: report, exit code, then the trace if any.
pub fn render(dir: &Path, case: &Case) -> String {
    let out = ceerlab(dir, case.args, case.env);
    let mut text = out.stdout;
    text.push_str(&format!("exit: {}\n", out.code));
    if let Some(trace) = case.trace {
        text.push_str("--- trace\n");
        text.push_str(&fs::read_to_string(dir.join(trace)).unwrap_or_else(|e| format!("unreadable: {e}\n")));
    }
    text
}

/// Compares every golden case, rewriting the files instead when
/// `CEERLAB_BLESS` is set. Returns one message per mismatch.
pub fn check_golden() -> Vec<String> {
    let bless = std::env::var_os("CEERLAB_BLESS").is_some();
    let dir = scratch();
    let mut failures = Vec::new();
    for case in GOLDEN {
        let text = render(dir.path(), case);
        let again = render(dir.path(), case);
        if text != again {
            failures.push(format!("{}: output differs between two runs", case.name));
        }
        let path = golden_dir().join(format!("{}.txt", case.name));
        if bless {
            fs::write(&path, &text).expect("write golden file");
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == text => {}
            Ok(expected) => failures.push(format!("{}: differs from golden file\n--- expected\n{expected}--- actual\n{text}", case.name)),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    failures
}

/// Runs every error case. Returns one message per unexpected outcome.
pub fn check_errors() -> Vec<String> {
    let dir = scratch();
    let mut failures = Vec::new();
    for case in ERRORS {
        let out = ceerlab(dir.path(), case.args, &[]);
        if out.code != case.code {
            failures.push(format!("{}: exit {} (expected {}), stderr: {}", case.name, out.code, case.code, out.stderr));
        } else if !out.stderr.contains(case.stderr) {
            failures.push(format!("{}: stderr lacks `{}`: {}", case.name, case.stderr, out.stderr));
        }
    }
    // a timed-out run still leaves its report and trace behind
    let out = ceerlab(dir.path(), ERRORS[11].args, &[]);
    if !out.stdout.contains("status: interrupted at stage") || !dir.path().join("timeout.trace").exists() {
        failures.push(format!("timeout: partial report or trace missing\n{}", out.stdout));
    }
    failures
}
