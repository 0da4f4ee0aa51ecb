use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use ceerlab::ceer::{check_reduction_at, check_reduction_with, CeerSpec, Verdict};
use ceerlab::constructions::{
    allhigh_run, avoidance_census, kk_extract, postsimple_run, weakarray_run, AlgebraPresentation, Interrupted,
    KkError, Limits,
};
use ceerlab::machine::{assemble, StageOutcome};
use ceerlab::semigroup::{
    classify, congruence_closure, fincl_class_size, fincl_decide, sr_decide, sr_from_join, sr_to_join, ClosureBounds,
    FinClAnswer, Presentation, Variant,
};
use ceerlab::transversal::{majorizes_principal, principal_at, principal_function_at, TransversalError};
use ceerlab::{build, classes_at, parse_spec, CeerRef, Program, Word};
use num_bigint::BigUint;

use crate::report::Report;
use crate::{ClosureArgs, Command, Construction, ReduceArgs, RunArgs, SemigroupCommand, VariantArg};

pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_HORIZON: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_PARTIAL: u8 = 5;

pub struct Outcome {
    pub report: Report,
    pub code: u8,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Display) -> CliError {
        CliError { code: EXIT_INPUT, message: message.to_string() }
    }
}

impl From<TransversalError> for CliError {
    fn from(e: TransversalError) -> CliError {
        let code = match e {
            TransversalError::InsufficientHorizon { .. } => EXIT_HORIZON,
            TransversalError::Partial { .. } => EXIT_PARTIAL,
            TransversalError::NotCertified { .. } => EXIT_FAILED_CHECK,
        };
        CliError { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(command: Command, echo: &str) -> CliResult<Outcome> {
    match command {
        Command::Decide { spec, x, y, stage } => {
            let r = load_ceer(&spec)?;
            let mut rep = Report::new("decide", echo);
            rep.stage = Some(stage.stage);
            rep.line(r.decide_at(stage.stage, x, y).to_string());
            done(rep)
        }
        Command::Classes { spec, stage, horizon } => {
            let r = load_ceer(&spec)?;
            let mut rep = Report::new("classes", echo);
            rep.stage = Some(stage.stage);
            rep.horizon = Some(horizon.max);
            for class in classes_at(r.as_ref(), stage.stage, horizon.max) {
                rep.line(format!("{}: {}", class[0], join(&class)));
            }
            diagnostics(&mut rep, &r, stage.stage, horizon.max);
            done(rep)
        }
        Command::Principal { spec, stage, horizon, index } => {
            let r = load_ceer(&spec)?;
            let mut rep = Report::new("principal", echo);
            rep.stage = Some(stage.stage);
            rep.horizon = Some(horizon.max);
            match index {
                Some(k) => rep.line(principal_function_at(r.as_ref(), stage.stage, k, horizon.max)?.to_string()),
                None => rep.line(join(principal_at(r.as_ref(), stage.stage, horizon.max).elements())),
            }
            diagnostics(&mut rep, &r, stage.stage, horizon.max);
            done(rep)
        }
        Command::Construct { which } => construct(which, echo),
        Command::Semigroup { which } => semigroup(which, echo),
        Command::Reduce(args) => reduce(args, echo),
        Command::Assemble { file } => {
            let text = read(&file)?;
            let program = assemble(&text).map_err(|e| CliError::input(format!("{}: {e}", file.display())))?;
            let mut rep = Report::new("assemble", echo);
            rep.line(program.index().to_string());
            done(rep)
        }
        Command::Disasm { index } => {
            let program = program_index(&index)?;
            let mut rep = Report::new("disasm", echo);
            let text = program.to_string();
            if text.is_empty() {
                rep.line("(empty program)");
            }
            for line in text.lines() {
                rep.line(line);
            }
            done(rep)
        }
    }
}

fn done(report: Report) -> CliResult<Outcome> {
    let code = if report.all_checks_pass() { 0 } else { EXIT_FAILED_CHECK };
    Ok(Outcome { report, code })
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn or_none(s: String) -> String {
    if s.is_empty() {
        "none".to_string()
    } else {
        s
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Inline if it starts with `(`, otherwise a path to a spec file.
fn load_spec(arg: &str) -> CliResult<CeerSpec> {
    let (text, origin) = if arg.trim_start().starts_with('(') {
        (arg.to_string(), "spec".to_string())
    } else {
        (read(Path::new(arg))?, arg.to_string())
    };
    let spec = parse_spec(&text).map_err(|e| CliError::input(format!("{origin}: {e}")))?;
    spec.validate().map_err(|e| CliError::input(format!("{origin}: {e}")))?;
    Ok(spec)
}

fn load_ceer(arg: &str) -> CliResult<CeerRef> {
    build(&load_spec(arg)?).map_err(CliError::input)
}

fn word(text: &str) -> CliResult<Word> {
    Word::new(text).map_err(|e| CliError::input(format!("word `{text}`: {e}")))
}

fn program_index(text: &str) -> CliResult<Program> {
    let index: BigUint = text.parse().map_err(|_| CliError::input(format!("bad program index `{text}`")))?;
    Ok(Program::decode(&index))
}

fn diagnostics(rep: &mut Report, r: &CeerRef, stage: u64, horizon: u64) {
    for d in r.diagnostics(stage, horizon) {
        rep.line(format!("note: {d}"));
    }
}

fn limits(run: &RunArgs) -> Limits {
    Limits { deadline: run.timeout_ms.map(|ms| Instant::now() + Duration::from_millis(ms)) }
}

/// Writes the trace, fills the common fields and maps an interruption to
/// the budget exit code.
fn finish_run(mut rep: Report, run: &RunArgs, trace: &[String], interrupted: Option<Interrupted>) -> CliResult<Outcome> {
    let path = run.trace.clone().unwrap_or_else(|| PathBuf::from(format!("{}.trace", rep.name)));
    let mut text = trace.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    fs::write(&path, text).map_err(|e| CliError { code: EXIT_FAILED_CHECK, message: format!("{}: {e}", path.display()) })?;
    rep.trace = Some(path.display().to_string());
    rep.stage = Some(run.stages);
    rep.horizon = Some(run.horizon);
    if let Some(i) = interrupted {
        rep.status = format!("interrupted at stage {}", i.stage);
        return Ok(Outcome { report: rep, code: EXIT_BUDGET });
    }
    done(rep)
}

fn construct(which: Construction, echo: &str) -> CliResult<Outcome> {
    match which {
        Construction::Allhigh { run, window } => {
            let result = allhigh_run(run.stages, limits(&run));
            let mut rep = Report::new("allhigh", echo);
            let p = result.final_partition();
            rep.line(format!("actions: {}", result.actions.len()));
            rep.line(format!("pending: {}", or_none(join(&result.pending()))));
            rep.line(format!("settled (no action by e' <= e in the last {window} stages):"));
            for e in result.quiescent(window) {
                let lo_next = p.interval(e + 1).0;
                if lo_next > run.horizon {
                    break;
                }
                let (lo, hi) = p.interval(e);
                let since = result.actions.iter().filter(|a| a.e <= e).map(|a| a.stage).max().unwrap_or(0);
                // stage 0 means no e' <= e ever acted
                rep.line(format!(
                    "  e={e} f={} interval=[{lo},{hi}] next-lo={lo_next} quiescent-since={since}",
                    result.f_final[e as usize]
                ));
            }
            rep.checks = result.verify(run.horizon, window);
            finish_run(rep, &run, &result.trace, result.interrupted)
        }
        Construction::Weakarray { spec, run, class_cap } => {
            let r = load_ceer(&spec)?;
            let result = weakarray_run(r.as_ref(), run.stages, class_cap, limits(&run))?;
            let mut rep = Report::new("weakarray", echo);
            rep.line(format!("spec: {}", load_spec(&spec)?));
            for (n, set) in result.state.sets().iter().enumerate() {
                if set.first().is_some_and(|&x| x <= run.horizon) {
                    rep.line(format!("F_{n}: {}", join(&set.iter().copied().collect::<Vec<_>>())));
                }
            }
            rep.line(format!("settled: {}", result.settled));
            rep.line(format!("T: {}", or_none(join(result.transversal.elements()))));
            for w in &result.warnings {
                rep.line(w.clone());
            }
            rep.checks = result.verify(r.as_ref());
            finish_run(rep, &run, &result.trace, result.interrupted)
        }
        Construction::Postsimple { run, census, k_max } => {
            let result = postsimple_run(run.stages, k_max, limits(&run));
            let mut rep = Report::new("postsimple", echo);
            rep.line(format!("Z ({} members):", result.state.members().len()));
            for (i, w) in result.state.members() {
                rep.line(format!("  {i}: {w}"));
            }
            rep.line("avoidance census:");
            for (len, count) in avoidance_census(&result.state.words(), census).iter().enumerate() {
                rep.line(format!("  {}: {count}", len + 1));
            }
            rep.checks = result.verify();
            finish_run(rep, &run, &result.trace, result.interrupted)
        }
        Construction::Kk { algebra, depth, budget, level_cap, run } => {
            let a = AlgebraPresentation::parse(&read(&algebra)?)
                .map_err(|e| CliError::input(format!("{}: {e}", algebra.display())))?;
            let result = kk_extract(&a, depth, run.stages, budget, level_cap, limits(&run)).map_err(|e| match e {
                KkError::Partial { .. } | KkError::LevelCap { .. } => CliError { code: EXIT_BUDGET, message: e.to_string() },
                KkError::Parse { .. } | KkError::Spec(_) => CliError::input(e),
                KkError::Transversal(t) => t.into(),
            })?;
            let mut rep = Report::new("kk", echo);
            for (i, level) in result.levels.iter().enumerate() {
                rep.line(format!("level {i}: {} elements, max {}", level.len(), level.last().copied().unwrap_or(0)));
            }
            rep.line(format!("T: {}", or_none(join(&result.picks))));
            rep.line(format!("m: {}", or_none(join(&result.m))));
            if let Some(i) = result.stall {
                rep.line(format!("subalgebra stalled at level {i}"));
            }
            let majorizes = match result.m.len() {
                0 => true,
                n => majorizes_principal(|i| result.m[i as usize], a.wp.as_ref(), run.stages, n as u64 - 1, run.horizon)?,
            };
            let nested = result.levels.windows(2).all(|w| w[0].iter().all(|x| w[1].binary_search(x).is_ok()));
            rep.checks = vec![
                check("levels-nested", nested, "a level is not contained in the next"),
                check("m-majorizes-principal", majorizes, "m(i) < p(i) for some i"),
            ];
            finish_run(rep, &run, &result.trace, result.interrupted)
        }
    }
}

fn check(name: &'static str, passed: bool, failure: &str) -> ceerlab::constructions::InvariantCheck {
    ceerlab::constructions::InvariantCheck {
        name,
        passed,
        detail: if passed { String::new() } else { failure.to_string() },
    }
}

fn bounds(c: &ClosureArgs) -> ClosureBounds {
    ClosureBounds { cap: c.cap, max_len: c.max_len }
}

fn closure_report(name: &str, echo: &str, c: &ClosureArgs) -> CliResult<(Report, CeerRef)> {
    let r = load_ceer(&c.spec)?;
    let mut rep = Report::new(name, echo);
    rep.stage = Some(c.stage.stage);
    Ok((rep, r))
}

fn semigroup(which: SemigroupCommand, echo: &str) -> CliResult<Outcome> {
    match which {
        SemigroupCommand::Classify { words } => {
            let mut rep = Report::new("semigroup classify", echo);
            for w in &words {
                rep.line(format!("{w}: {}", classify(&word(w)?)));
            }
            done(rep)
        }
        SemigroupCommand::Decide { variant, closure, u, v } => {
            let (u, v) = (word(&u)?, word(&v)?);
            let (mut rep, r) = closure_report("semigroup decide", echo, &closure)?;
            let stage = closure.stage.stage;
            let answer = match variant {
                VariantArg::Sr => sr_decide(r.as_ref(), stage, &u, &v).to_string(),
                VariantArg::Fincl => match fincl_decide(r.as_ref(), stage, &u, &v, bounds(&closure)) {
                    FinClAnswer::Equal => "true".to_string(),
                    FinClAnswer::Distinct => "false".to_string(),
                    FinClAnswer::Unknown => "unknown (closure cap reached)".to_string(),
                },
            };
            rep.line(answer);
            done(rep)
        }
        SemigroupCommand::Tojoin { word: w } => {
            let mut rep = Report::new("semigroup tojoin", echo);
            rep.line(sr_to_join(&word(&w)?).to_string());
            done(rep)
        }
        SemigroupCommand::Fromjoin { n } => {
            let mut rep = Report::new("semigroup fromjoin", echo);
            rep.line(sr_from_join(n).to_string());
            done(rep)
        }
        SemigroupCommand::Closure { variant, closure, word: w } => {
            let w = word(&w)?;
            let (mut rep, r) = closure_report("semigroup closure", echo, &closure)?;
            let variant = match variant {
                VariantArg::Sr => Variant::Sr,
                VariantArg::Fincl => Variant::FinCl,
            };
            let result = congruence_closure(Presentation { variant, r: r.as_ref() }, closure.stage.stage, &w, bounds(&closure));
            rep.line(format!("size: {}", result.words.len()));
            rep.line(format!("truncated: {}", result.truncated));
            rep.line("members:");
            for member in &result.words {
                rep.line(format!("  {member}"));
            }
            done(rep)
        }
        SemigroupCommand::Classsize { closure, word: w } => {
            let w = word(&w)?;
            let (mut rep, r) = closure_report("semigroup classsize", echo, &closure)?;
            let size = fincl_class_size(r.as_ref(), closure.stage.stage, &w, bounds(&closure));
            rep.line(format!("size: {}", size.size));
            rep.line(format!("truncated: {}", size.truncated));
            match size.predicted {
                Some(p) => {
                    rep.line(format!("predicted: {p}"));
                    if !size.truncated {
                        rep.checks.push(check("product-formula", p == size.size, "predicted size differs"));
                    }
                }
                None => rep.line("predicted: none (coding occurrences share an a)"),
            }
            done(rep)
        }
    }
}

fn reduce(args: ReduceArgs, echo: &str) -> CliResult<Outcome> {
    let program = match (&args.f, &args.asm) {
        (Some(index), _) => program_index(index)?,
        (None, Some(file)) => assemble(&read(file)?).map_err(|e| CliError::input(format!("{}: {e}", file.display())))?,
        (None, None) => return Err(CliError::input("one of --f or --asm is required")),
    };
    let from_spec = load_spec(&args.from)?;
    let mut to_spec = load_spec(&args.to)?;
    if let Some(n) = args.plus_idn {
        to_spec = CeerSpec::UniformJoin(Box::new(to_spec), Box::new(CeerSpec::IdN(n)));
    }
    let r = build(&from_spec).map_err(CliError::input)?;
    let s = build(&to_spec).map_err(CliError::input)?;
    let (stage, horizon) = (args.stage.stage, args.horizon.max);

    let mut images = Vec::new();
    let mut divergent = Vec::new();
    for x in 0..=horizon {
        match program.run(x, args.budget) {
            StageOutcome::Halted { value, .. } => images.push(value),
            StageOutcome::Running => divergent.push(x),
        }
    }
    if !divergent.is_empty() {
        return Err(CliError {
            code: EXIT_PARTIAL,
            message: format!("f-partial: no convergence within {} steps on inputs {}", args.budget, join(&divergent)),
        });
    }
    let f = |x: u64| images[x as usize];
    let report = match args.verify_stage {
        Some(t) => check_reduction_at(f, r.as_ref(), s.as_ref(), horizon, stage, t),
        None => check_reduction_with(f, r.as_ref(), s.as_ref(), horizon, stage),
    };

    let mut rep = Report::new("reduce", echo);
    rep.stage = Some(stage);
    rep.horizon = Some(horizon);
    rep.line(format!("from: {from_spec}"));
    rep.line(format!("to: {to_spec}"));
    rep.line(format!("f: {}", program.index()));
    rep.line(match report.verdict {
        Verdict::Consistent => "verdict: consistent".to_string(),
        Verdict::Counterexample { x, y, side } => format!("verdict: counterexample ({x},{y},{side})"),
    });
    rep.line(format!("verify-stage: {}", report.verify_stage));
    if report.stage_bounded {
        rep.line("caveat: missing relations were only checked up to the verify stage; consistent is evidence, not proof");
    }
    done(rep)
}
