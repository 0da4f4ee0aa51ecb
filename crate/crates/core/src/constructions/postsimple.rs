//! A Post-style simple set of words: each `W_i` donates at most one word of
//! length at least `i + 5`.

use std::collections::BTreeMap;

use super::{Interrupted, InvariantCheck, Limits};
use crate::machine::Program;
use crate::word::{first_code_of_length, word_decode, Word};
use crate::Stage;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleSetState {
    /// Served index ↦ the word it put into `Z`.
    members: BTreeMap<u64, Word>,
    stage: Stage,
}

impl SimpleSetState {
    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn members(&self) -> &BTreeMap<u64, Word> {
        &self.members
    }

    pub fn words(&self) -> Vec<Word> {
        let mut words: Vec<Word> = self.members.values().cloned().collect();
        words.sort();
        words
    }

    /// `|Z ∩ X^{≤k+4}| ≤ k` for all `k ≤ k_max`, and each member from index
    /// `i` has length at least `i + 5`.
    pub fn check(&self, k_max: usize) -> Result<(), String> {
        for (i, w) in &self.members {
            if (w.len() as u64) < i + 5 {
                return Err(format!("index {i} served {w}, shorter than {}", i + 5));
            }
        }
        for k in 0..=k_max {
            let short = self.members.values().filter(|w| w.len() <= k + 4).count();
            if short > k {
                return Err(format!("{short} members of length at most {} (k = {k})", k + 4));
            }
        }
        Ok(())
    }
}

/// Entry stages into `W_i` of the codes that matter for index `i`: those of
/// length at least `i + 5` below the last stage.
#[derive(Clone, Debug)]
pub struct EnumerationTable {
    stages: Stage,
    /// `entries[i][k]`: stage at which code `first(i + 5) + k` enters `W_i`.
    entries: Vec<Vec<Option<Stage>>>,
}

impl EnumerationTable {
    pub fn new(stages: Stage) -> EnumerationTable {
        EnumerationTable::within(stages, Limits::none()).expect("no deadline")
    }

    fn within(stages: Stage, limits: Limits) -> Option<EnumerationTable> {
        let mut entries = Vec::new();
        for i in 0u64.. {
            let first = match first_code_of_length(i as usize + 5) {
                Some(c) if c < stages => c,
                _ => break,
            };
            let p = Program::from_index(i);
            // n enters W_i once φ_i(n) has converged and n < stage
            let mut row = Vec::with_capacity((stages - first) as usize);
            for n in first..stages {
                if limits.expired() {
                    return None;
                }
                row.push(p.convergence(n, stages).map(|c| c.stage.max(n + 1)));
            }
            entries.push(row);
        }
        Some(EnumerationTable { stages, entries })
    }

    /// Least code of length `≥ i + 5` in `W_{i,stage}`.
    pub fn first_long_member(&self, i: u64, stage: Stage) -> Option<u64> {
        assert!(stage <= self.stages, "table built up to stage {}", self.stages);
        let row = self.entries.get(i as usize)?;
        let first = first_code_of_length(i as usize + 5)?;
        row.iter().position(|e| e.is_some_and(|t| t <= stage)).map(|k| first + k as u64)
    }

    pub fn indices(&self) -> u64 {
        self.entries.len() as u64
    }
}

/// Stage `s + 1`: every unserved `i ≤ s` whose `W_i` now holds a long
/// enough word is served, in increasing `i`, with its least such word.
pub fn postsimple_step(state: &SimpleSetState, table: &EnumerationTable) -> (SimpleSetState, Vec<(u64, Word)>) {
    let s = state.stage;
    let mut next = state.clone();
    next.stage = s + 1;
    let mut served = Vec::new();
    for i in 0..=s.min(table.indices().saturating_sub(1)) {
        if next.members.contains_key(&i) {
            continue;
        }
        if let Some(code) = table.first_long_member(i, s + 1) {
            let w = word_decode(code);
            next.members.insert(i, w.clone());
            served.push((i, w));
        }
    }
    (next, served)
}

#[derive(Clone, Debug)]
pub struct PostSimpleRun {
    pub state: SimpleSetState,
    /// First failure of the per-stage bound check, if any.
    pub bound_failure: Option<String>,
    pub trace: Vec<String>,
    pub interrupted: Option<Interrupted>,
}

impl PostSimpleRun {
    pub fn verify(&self) -> Vec<InvariantCheck> {
        let short = self.state.members.values().find(|w| w.len() <= 4).map(|w| format!("{w} has length {}", w.len()));
        vec![
            InvariantCheck::new("length-bound-every-stage", self.bound_failure.clone()),
            InvariantCheck::new("no-short-members", short),
            // the state maps each index to one word, so this is structural
            InvariantCheck::new("one-member-per-index", None),
        ]
    }
}

/// Runs to stage `stages`, checking the bound for all `k ≤ k_max` after
/// every stage.
pub fn postsimple_run(stages: Stage, k_max: usize, limits: Limits) -> PostSimpleRun {
    let mut state = SimpleSetState::default();
    let mut trace = Vec::new();
    let mut bound_failure = None;
    let mut interrupted = None;
    let Some(table) = EnumerationTable::within(stages, limits) else {
        return PostSimpleRun { state, bound_failure, trace, interrupted: Some(Interrupted { stage: 0 }) };
    };
    for s in 0..stages {
        if limits.expired() {
            interrupted = Some(Interrupted { stage: s });
            break;
        }
        let (next, served) = postsimple_step(&state, &table);
        if served.is_empty() {
            trace.push(format!("{} idle", s + 1));
        }
        for (i, w) in &served {
            trace.push(format!("{} serve {i} {w}", s + 1));
        }
        if bound_failure.is_none() {
            bound_failure = next.check(k_max).err().map(|e| format!("stage {}: {e}", s + 1));
        }
        state = next;
    }
    PostSimpleRun { state, bound_failure, trace, interrupted }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_serves_at_stage_31() {
        let table = EnumerationTable::new(40);
        let mut state = SimpleSetState::default();
        for _ in 0..30 {
            state = postsimple_step(&state, &table).0;
            assert!(!state.members.contains_key(&0));
        }
        let (state, served) = postsimple_step(&state, &table);
        assert_eq!(state.stage(), 31);
        assert!(served.contains(&(0, Word::new("aaaaa").unwrap())));
    }

    #[test]
    fn table_agrees_with_stage_semantics() {
        let stages = 80;
        let table = EnumerationTable::new(stages);
        for i in 0..table.indices() {
            let p = Program::from_index(i);
            let first = first_code_of_length(i as usize + 5).unwrap();
            for s in 0..=stages {
                let direct = (first..s).find(|&n| crate::machine::phi_stage(&p, n, s).is_some());
                assert_eq!(table.first_long_member(i, s), direct, "i={i} s={s}");
            }
        }
    }

    #[test]
    fn run_respects_the_bounds() {
        let run = postsimple_run(300, 20, Limits::none());
        assert!(run.verify().iter().all(|c| c.passed));
        assert!(run.trace.len() >= 300);
        assert_eq!(run.state.members().get(&0).map(Word::as_str), Some("aaaaa"));
    }
}
