//! Transversal extraction from a finitely generated algebra: grow the
//! generated levels `X_0 ⊆ X_1 ⊆ ...` and pick one new class per level.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Interrupted, Limits};
use crate::ceer::{build, parse_spec, CeerRef, SpecError};
use crate::machine::{Program, StageOutcome};
use crate::pairing::encode_tuple;
use crate::transversal::{TransversalError, TransversalSample};
use crate::Stage;

/// Operations on ω given by programs (an arity-`k` input is the encoded
/// tuple), the word problem `=_A`, and the generators.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub ops: Vec<(u64, Program)>,
    pub wp: CeerRef,
    pub generators: BTreeSet<u64>,
}

#[derive(Debug, Error)]
pub enum KkError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("wp spec: {0}")]
    Spec(#[from] SpecError),
    #[error("budget exhausted: operation {op} did not converge on tuple {args:?}")]
    Partial { op: usize, args: Vec<u64> },
    #[error("level {level} has {size} elements, over the cap")]
    LevelCap { level: usize, size: usize },
    #[error("{0}")]
    Transversal(#[from] TransversalError),
}

impl AlgebraPresentation {
    /// Parses
    ///
    /// ```text
    /// generators: 0 1
    /// op arity=1 program=2
    /// wp: (id)
    /// ```
    ///
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<AlgebraPresentation, KkError> {
        let mut generators = None;
        let mut ops = Vec::new();
        let mut wp = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| KkError::Parse { line, message };
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if let Some(rest) = t.strip_prefix("generators:") {
                let gens = rest
                    .split_whitespace()
                    .map(|g| g.trim_end_matches(',').parse::<u64>().map_err(|_| err(format!("bad generator `{g}`"))))
                    .collect::<Result<BTreeSet<u64>, _>>()?;
                if gens.is_empty() {
                    return Err(err("no generators".into()));
                }
                generators = Some(gens);
            } else if let Some(rest) = t.strip_prefix("op ") {
                let (mut arity, mut program) = (None, None);
                for field in rest.split_whitespace() {
                    match field.split_once('=') {
                        Some(("arity", v)) => arity = Some(v.parse::<u64>().map_err(|_| err(format!("bad arity `{v}`")))?),
                        Some(("program", v)) => {
                            let index = v.parse().map_err(|_| err(format!("bad program index `{v}`")))?;
                            program = Some(Program::decode(&index));
                        }
                        _ => return Err(err(format!("unexpected field `{field}`"))),
                    }
                }
                match (arity, program) {
                    (Some(a), Some(p)) => ops.push((a, p)),
                    _ => return Err(err("op needs arity= and program=".into())),
                }
            } else if let Some(rest) = t.strip_prefix("wp:") {
                wp = Some(build(&parse_spec(rest.trim()).map_err(|e| match e {
                    SpecError::Parse { column, message, .. } => err(format!("column {column}: {message}")),
                    other => KkError::Spec(other),
                })?)?);
            } else {
                return Err(err(format!("unrecognized line `{t}`")));
            }
        }
        let missing = |what: &str| KkError::Parse { line: text.lines().count().max(1), message: format!("missing {what}") };
        Ok(AlgebraPresentation {
            generators: generators.ok_or_else(|| missing("generators"))?,
            wp: wp.ok_or_else(|| missing("wp"))?,
            ops,
        })
    }
}

#[derive(Clone, Debug)]
pub struct KkResult {
    /// `X_0, X_1, ...`, each ascending.
    pub levels: Vec<Vec<u64>>,
    /// `y_i ∈ X_{i+1}` not related to any member of `X_i`.
    pub picks: Vec<u64>,
    pub transversal: TransversalSample,
    /// `m(i) = max(X_{i+1})`.
    pub m: Vec<u64>,
    /// Level `i` with `X_{i+1} ⊆ [X_i]`, if reached.
    pub stall: Option<usize>,
    pub trace: Vec<String>,
    pub interrupted: Option<Interrupted>,
}

/// Grows `depth` levels, reading `=_A` at `stage` and running each operation
/// for at most `budget` steps per tuple.
pub fn kk_extract(
    a: &AlgebraPresentation,
    depth: usize,
    stage: Stage,
    budget: u64,
    level_cap: usize,
    limits: Limits,
) -> Result<KkResult, KkError> {
    let mut level: BTreeSet<u64> = a.generators.clone();
    let mut levels = vec![level.iter().copied().collect::<Vec<_>>()];
    let mut trace = vec![format!("level 0 {}", level.len())];
    let (mut picks, mut m) = (Vec::new(), Vec::new());
    let mut stall = None;
    let mut interrupted = None;
    for i in 0..depth {
        if limits.expired() {
            interrupted = Some(Interrupted { stage: i as Stage });
            break;
        }
        let current: Vec<u64> = level.iter().copied().collect();
        let mut next = level.clone();
        for (op, (arity, program)) in a.ops.iter().enumerate() {
            for args in tuples(&current, *arity as usize) {
                let input = encode_tuple(&args).ok_or(KkError::Partial { op, args: args.clone() })?;
                match program.run(input, budget) {
                    StageOutcome::Halted { value, .. } => {
                        next.insert(value);
                    }
                    StageOutcome::Running => return Err(KkError::Partial { op, args }),
                }
                if next.len() > level_cap {
                    return Err(KkError::LevelCap { level: i + 1, size: next.len() });
                }
            }
        }
        trace.push(format!("level {} {}", i + 1, next.len()));
        let fresh = next.iter().copied().find(|&y| !current.iter().any(|&z| a.wp.decide_at(stage, y, z)));
        levels.push(next.iter().copied().collect());
        match fresh {
            Some(y) => {
                picks.push(y);
                m.push(*next.last().expect("levels contain the generators"));
            }
            None => {
                stall = Some(i);
                trace.push(format!("stall {i}"));
                break;
            }
        }
        level = next;
    }
    let transversal = TransversalSample::certify(a.wp.as_ref(), stage, picks.iter().copied())?;
    Ok(KkResult { levels, picks, transversal, m, stall, trace, interrupted })
}

/// All `arity`-tuples over `xs`, lexicographically.
fn tuples(xs: &[u64], arity: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                xs.iter().map(move |&x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}
