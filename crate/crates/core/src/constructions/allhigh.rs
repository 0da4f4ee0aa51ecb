//! The interval priority construction: a ceer whose classes are finite
//! consecutive intervals, pushed apart so that `min(I_{e+1})` eventually
//! exceeds every value `φ_i(j)` with `i, j ≤ e`.

use std::sync::Arc;

use super::{Interrupted, InvariantCheck, Limits};
use crate::ceer::StagedCeer;
use crate::machine::{phi_stage, Program};
use crate::transversal::principal_function_at;
use crate::Stage;

/// `max({0} ∪ {φ_{i,s}(j) : i, j ≤ e})` over the fixed numbering.
pub fn f_stage(e: u64, s: Stage) -> u64 {
    let mut best = 0;
    for i in 0..=e {
        let p = Program::from_index(i);
        for j in 0..=e {
            if let Some(v) = phi_stage(&p, j, s) {
                best = best.max(v);
            }
        }
    }
    best
}

/// Consecutive closed intervals `[lo_j, hi_j]` covering ω: an explicit
/// prefix, then singletons `{tail_start}, {tail_start + 1}, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPartition {
    prefix: Vec<(u64, u64)>,
    tail_start: u64,
    stage: Stage,
}

impl IntervalPartition {
    /// `I_{j,0} = {j}`.
    pub fn initial() -> IntervalPartition {
        IntervalPartition { prefix: Vec::new(), tail_start: 0, stage: 0 }
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn prefix(&self) -> &[(u64, u64)] {
        &self.prefix
    }

    pub fn tail_start(&self) -> u64 {
        self.tail_start
    }

    pub fn interval(&self, j: u64) -> (u64, u64) {
        match self.prefix.get(j as usize) {
            Some(&iv) => iv,
            None => {
                let x = self.tail_start + (j - self.prefix.len() as u64);
                (x, x)
            }
        }
    }

    pub fn index_of(&self, x: u64) -> u64 {
        if x >= self.tail_start {
            return self.prefix.len() as u64 + (x - self.tail_start);
        }
        self.prefix.partition_point(|&(_, hi)| hi < x) as u64
    }

    pub fn related(&self, x: u64, y: u64) -> bool {
        self.index_of(x) == self.index_of(y)
    }

    /// Consecutive, disjoint, starting at 0, and singletons from the stage on.
    pub fn check_structure(&self) -> Result<(), String> {
        let mut next = 0;
        for (j, &(lo, hi)) in self.prefix.iter().enumerate() {
            if lo != next || hi < lo {
                return Err(format!("interval {j} is [{lo}, {hi}], expected to start at {next}"));
            }
            next = hi + 1;
        }
        if self.tail_start != next {
            return Err(format!("singleton tail starts at {}, expected {next}", self.tail_start));
        }
        if self.tail_start > self.stage {
            return Err(format!("tail starts at {} after stage {}", self.tail_start, self.stage));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Action {
    /// The stage `s + 1` at which `e` acted.
    pub stage: Stage,
    pub e: u64,
    /// `f_{s+1}(e)`.
    pub f: u64,
    pub hi_before: u64,
    pub hi_after: u64,
}

/// Stage `s + 1` from the stage-`s` partition, with `f(e)` standing for
/// `f_{s+1}(e)`. The least `e ≤ s` with `f(e) > hi_e` acts, if any.
pub fn allhigh_step(state: &IntervalPartition, f: impl Fn(u64) -> u64) -> (IntervalPartition, Option<Action>) {
    let s = state.stage;
    let actor = (0..=s).find(|&e| f(e) > state.interval(e).1);
    let Some(e) = actor else {
        return (IntervalPartition { stage: s + 1, ..state.clone() }, None);
    };
    let (lo, hi_before) = state.interval(e);
    let mut prefix: Vec<(u64, u64)> = (0..e).map(|j| state.interval(j)).collect();
    prefix.push((lo, s));
    let next = IntervalPartition { prefix, tail_start: s + 1, stage: s + 1 };
    let action = Action { stage: s + 1, e, f: f(e), hi_before, hi_after: s };
    (next, Some(action))
}

/// Stage-`s` values of `f_s(e)` for all `e < size`, advanced one stage at a
/// time from a convergence table of every `φ_i(j)` with `i, j < size`.
struct FTable {
    /// `events[t]`: pairs `(max(i, j), value)` converging exactly at stage `t`.
    events: Vec<Vec<(usize, u64)>>,
    by_level: Vec<u64>,
    stage: Stage,
}

impl FTable {
    /// `None` if `limits` expire while the table is being filled.
    fn new(size: u64, horizon_stage: Stage, limits: Limits) -> Option<FTable> {
        let mut events = vec![Vec::new(); horizon_stage as usize + 1];
        for i in 0..size {
            let p = Program::from_index(i);
            for j in 0..size {
                if limits.expired() {
                    return None;
                }
                if let Some(c) = p.convergence(j, horizon_stage) {
                    events[c.stage as usize].push((i.max(j) as usize, c.value));
                }
            }
        }
        Some(FTable { events, by_level: vec![0; size as usize], stage: 0 })
    }

    /// Moves to `stage` and returns `f_stage(e)` for every `e`.
    fn advance(&mut self, stage: Stage) -> Vec<u64> {
        while self.stage < stage {
            self.stage += 1;
            for &(level, value) in &self.events[self.stage as usize] {
                self.by_level[level] = self.by_level[level].max(value);
            }
        }
        self.by_level
            .iter()
            .scan(0u64, |acc, &v| {
                *acc = (*acc).max(v);
                Some(*acc)
            })
            .collect()
    }
}

/// The approximation `R_s` read off the recorded partitions; stages past
/// the run repeat the last one.
#[derive(Clone, Debug)]
pub struct AllHighCeer {
    history: Vec<Arc<IntervalPartition>>,
}

impl AllHighCeer {
    pub fn partition_at(&self, stage: Stage) -> &IntervalPartition {
        let last = self.history.len() - 1;
        &self.history[(stage as usize).min(last)]
    }
}

impl StagedCeer for AllHighCeer {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        x == y || self.partition_at(stage).related(x, y)
    }
}

#[derive(Clone, Debug)]
pub struct AllHighRun {
    pub stages: Stage,
    pub ceer: AllHighCeer,
    pub actions: Vec<Action>,
    /// `f_S(e)` for `e < S`.
    pub f_final: Vec<u64>,
    pub trace: Vec<String>,
    pub interrupted: Option<Interrupted>,
}

impl AllHighRun {
    pub fn final_partition(&self) -> &IntervalPartition {
        self.ceer.partition_at(self.stages)
    }

    /// Requirements `e < S` still requiring attention after the last stage.
    pub fn pending(&self) -> Vec<u64> {
        let p = self.final_partition();
        (0..self.f_final.len() as u64).filter(|&e| self.f_final[e as usize] > p.interval(e).1).collect()
    }

    /// `e` is quiescent if no `e' ≤ e` acted in the last `window` stages.
    pub fn quiescent(&self, window: Stage) -> Vec<u64> {
        let cutoff = self.stages.saturating_sub(window);
        let mut last = vec![0u64; self.f_final.len()];
        for a in &self.actions {
            last[a.e as usize] = last[a.e as usize].max(a.stage);
        }
        let mut latest = 0;
        let mut out = Vec::new();
        for (e, &t) in last.iter().enumerate() {
            latest = latest.max(t);
            if latest <= cutoff {
                out.push(e as u64);
            }
        }
        out
    }

    /// The finite checks of the verification: partition structure at every
    /// stage, the effect of each action, `f_S(e) < lo_{e+1}` for quiescent
    /// requirements, and finiteness of the classes meeting `[0, horizon]`.
    pub fn verify(&self, horizon: u64, window: Stage) -> Vec<InvariantCheck> {
        let structure = (0..=self.stages).find_map(|s| {
            self.ceer.partition_at(s).check_structure().err().map(|e| format!("stage {s}: {e}"))
        });

        let actions = self.actions.iter().find_map(|a| {
            let before = self.ceer.partition_at(a.stage - 1).interval(a.e).1;
            let after = self.ceer.partition_at(a.stage).interval(a.e).1;
            (a.f <= before || a.f > after).then(|| format!("act {} at stage {}: f={} hi {before} -> {after}", a.e, a.stage, a.f))
        });

        let p = self.final_partition();
        let settled = self.quiescent(window).into_iter().find_map(|e| {
            let f = self.f_final[e as usize];
            let lo_next = p.interval(e + 1).0;
            if f >= lo_next {
                return Some(format!("e={e}: f={f} >= lo={lo_next}"));
            }
            if lo_next <= horizon {
                match principal_function_at(&self.ceer, self.stages, e + 1, horizon) {
                    Ok(v) if v == lo_next => {}
                    other => return Some(format!("e={e}: principal value {other:?} differs from lo={lo_next}")),
                }
            }
            None
        });

        // every class meeting the horizon lies in the explicit prefix or the
        // singleton tail, so it is bounded by the stage
        let finite = (0..=self.stages).find_map(|s| {
            let part = self.ceer.partition_at(s);
            let top = part.index_of(horizon);
            (0..=top).map(|j| part.interval(j)).find(|&(lo, hi)| hi < lo || hi > s.max(horizon)).map(|iv| format!("stage {s}: interval {iv:?}"))
        });

        vec![
            InvariantCheck::new("intervals-partition", structure),
            InvariantCheck::new("action-effect", actions),
            InvariantCheck::new("quiescent-separation", settled),
            InvariantCheck::new("finite-classes", finite),
        ]
    }
}

/// Runs the construction to stage `stages` against the fixed numbering.
pub fn allhigh_run(stages: Stage, limits: Limits) -> AllHighRun {
    let mut state = IntervalPartition::initial();
    let mut history = vec![Arc::new(state.clone())];
    let Some(mut table) = FTable::new(stages, stages, limits) else {
        return AllHighRun {
            stages: 0,
            ceer: AllHighCeer { history },
            actions: Vec::new(),
            f_final: Vec::new(),
            trace: Vec::new(),
            interrupted: Some(Interrupted { stage: 0 }),
        };
    };
    let mut actions = Vec::new();
    let mut trace = Vec::new();
    let mut interrupted = None;
    let mut f = table.advance(0);
    for s in 0..stages {
        if limits.expired() {
            interrupted = Some(Interrupted { stage: s });
            break;
        }
        f = table.advance(s + 1);
        let (next, action) = allhigh_step(&state, |e| f[e as usize]);
        match action {
            Some(a) => {
                trace.push(format!("{} act {}", a.stage, a.e));
                actions.push(a);
                history.push(Arc::new(next.clone()));
            }
            None => {
                trace.push(format!("{} idle", s + 1));
                let same = Arc::clone(history.last().expect("history starts non-empty"));
                history.push(same);
            }
        }
        state = next;
    }
    let reached = history.len() as Stage - 1;
    AllHighRun {
        stages: reached,
        ceer: AllHighCeer { history },
        actions,
        f_final: f,
        trace,
        interrupted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ceer::check_stage_axioms;

    #[test]
    fn f_stage_basics() {
        for e in 0..6 {
            assert_eq!(f_stage(e, 0), 0);
        }
        for s in 0..25 {
            for e in 0..5 {
                assert!(f_stage(e, s) <= f_stage(e + 1, s));
                assert!(f_stage(e, s) <= f_stage(e, s + 1));
            }
        }
        // index 0 is the identity
        for j in 0..6 {
            assert!(f_stage(j, 40) >= j);
        }
    }

    #[test]
    fn table_matches_direct_computation() {
        let size = 12;
        let mut table = FTable::new(size, 30, Limits::none()).unwrap();
        for s in 0..=30 {
            let f = table.advance(s);
            for e in 0..size {
                assert_eq!(f[e as usize], f_stage(e, s), "e={e} s={s}");
            }
        }
    }

    #[test]
    fn stipulated_step() {
        // stage 2 partition is still the identity; f_3(0) = 2 makes R_0 act
        let mut state = IntervalPartition::initial();
        for _ in 0..2 {
            state = allhigh_step(&state, |_| 0).0;
        }
        let (next, action) = allhigh_step(&state, |e| if e == 0 { 2 } else { 0 });
        assert_eq!(action.map(|a| (a.stage, a.e, a.hi_before, a.hi_after)), Some((3, 0, 0, 2)));
        assert_eq!(next.interval(0), (0, 2));
        for j in 1..6 {
            assert_eq!(next.interval(j), (2 + j, 2 + j));
        }
        let (idle, none) = allhigh_step(&next, |_| 0);
        assert!(none.is_none());
        assert_eq!(idle.prefix(), next.prefix());
        assert_eq!(idle.stage(), 4);
    }

    #[test]
    fn index_lookup() {
        let p = IntervalPartition { prefix: vec![(0, 2), (3, 3), (4, 7)], tail_start: 8, stage: 9 };
        let idx: Vec<u64> = (0..11).map(|x| p.index_of(x)).collect();
        assert_eq!(idx, [0, 0, 0, 1, 2, 2, 2, 2, 3, 4, 5]);
        p.check_structure().unwrap();
    }

    #[test]
    fn stage_zero_is_identity() {
        let run = allhigh_run(0, Limits::none());
        assert_eq!(run.stages, 0);
        for x in 0..20 {
            for y in 0..20 {
                assert_eq!(run.ceer.decide_at(0, x, y), x == y);
            }
        }
    }

    #[test]
    fn small_run_passes_its_checks() {
        let run = allhigh_run(120, Limits::none());
        assert_eq!(run.trace.len(), 120);
        for check in run.verify(100, 30) {
            assert!(check.passed, "{check}");
        }
        check_stage_axioms(&run.ceer, 120, 60).unwrap();
        let quiet = run.quiescent(30);
        assert!(quiet.iter().all(|e| !run.pending().contains(e)));
    }
}
