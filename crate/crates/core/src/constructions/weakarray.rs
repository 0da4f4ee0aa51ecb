//! The weak disjoint array construction over a ceer with finite classes,
//! and the transversal it intersects.

use std::collections::{BTreeSet, HashSet};

use super::{Interrupted, InvariantCheck, Limits};
use crate::ceer::StagedCeer;
use crate::transversal::{TransversalError, TransversalSample};
use crate::Stage;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayState {
    /// `F_{n,s}`; indices past the end are empty.
    sets: Vec<BTreeSet<u64>>,
    stage: Stage,
    /// Every number below this has been picked.
    fresh: u64,
    /// `(stage, n, x)` per pick.
    pub pick_log: Vec<(Stage, usize, u64)>,
}

impl ArrayState {
    pub fn initial() -> ArrayState {
        ArrayState { sets: Vec::new(), stage: 0, fresh: 0, pick_log: Vec::new() }
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn sets(&self) -> &[BTreeSet<u64>] {
        &self.sets
    }

    /// Least `n` with `F_n ⊆ ⋃_{i<n} [F_i]` under `R` at this state's stage.
    pub fn covered_index(&self, r: &dyn StagedCeer) -> usize {
        let s = self.stage;
        (0..self.sets.len())
            .find(|&n| {
                self.sets[n].iter().all(|&x| self.sets[..n].iter().flatten().any(|&z| r.decide_at(s, x, z)))
            })
            .unwrap_or(self.sets.len())
    }

    /// `T_n = F_n ∖ ⋃_{m<n} [F_m]` at this state's stage.
    pub fn remainder(&self, r: &dyn StagedCeer, n: usize) -> BTreeSet<u64> {
        let s = self.stage;
        self.sets[n]
            .iter()
            .copied()
            .filter(|&x| !self.sets[..n].iter().flatten().any(|&z| r.decide_at(s, x, z)))
            .collect()
    }
}

/// Stage `s + 1`: the least covered index gets the least fresh number.
pub fn weakarray_step(state: &ArrayState, r: &dyn StagedCeer) -> ArrayState {
    let n = state.covered_index(r);
    let x = state.fresh;
    let mut next = state.clone();
    if n == next.sets.len() {
        next.sets.push(BTreeSet::new());
    }
    next.sets[n].insert(x);
    next.fresh += 1;
    next.stage += 1;
    next.pick_log.push((next.stage, n, x));
    next
}

#[derive(Clone, Debug)]
pub struct WeakArrayRun {
    pub state: ArrayState,
    /// Indices below this have a nonempty remainder at the final stage.
    pub settled: usize,
    pub transversal: TransversalSample,
    pub warnings: Vec<String>,
    pub trace: Vec<String>,
    pub interrupted: Option<Interrupted>,
}

impl WeakArrayRun {
    pub fn verify(&self, r: &dyn StagedCeer) -> Vec<InvariantCheck> {
        let mut seen = HashSet::new();
        let disjoint = self
            .state
            .pick_log
            .iter()
            .find(|&&(_, _, x)| !seen.insert(x))
            .map(|(s, n, x)| format!("{x} picked twice, again at stage {s} for F_{n}"));

        let s = self.state.stage;
        let certified = TransversalSample::certify(r, s, self.transversal.elements().iter().copied())
            .err()
            .map(|e| e.to_string());

        let t: HashSet<u64> = self.transversal.elements().iter().copied().collect();
        let meets = (0..self.settled)
            .find(|&n| !self.state.sets[n].iter().any(|x| t.contains(x)))
            .map(|n| format!("F_{n} misses T"));

        vec![
            InvariantCheck::new("pairwise-disjoint", disjoint),
            InvariantCheck::new("transversal-certified", certified),
            InvariantCheck::new("array-meets-transversal", meets),
        ]
    }
}

/// Runs `stages` steps. Classes larger than `class_cap` among the picked
/// numbers are reported as warnings: the verification needs finite classes.
pub fn weakarray_run(r: &dyn StagedCeer, stages: Stage, class_cap: usize, limits: Limits) -> Result<WeakArrayRun, TransversalError> {
    let mut state = ArrayState::initial();
    let mut trace = Vec::new();
    let mut interrupted = None;
    for s in 0..stages {
        if limits.expired() {
            interrupted = Some(Interrupted { stage: s });
            break;
        }
        state = weakarray_step(&state, r);
        let &(stage, n, x) = state.pick_log.last().expect("a step always picks");
        trace.push(format!("{stage} pick {n} {x}"));
    }

    let settled = state.covered_index(r);
    let picks = (0..settled).filter_map(|n| state.remainder(r, n).first().copied());
    let transversal = TransversalSample::certify(r, state.stage, picks)?;

    let mut warnings = Vec::new();
    if state.fresh > 0 {
        for class in crate::ceer::classes_at(r, state.stage, state.fresh - 1) {
            if class.len() > class_cap {
                warnings.push(format!(
                    "class-growth warning: class of {} has {} members among the picked numbers",
                    class[0],
                    class.len()
                ));
            }
        }
    }
    Ok(WeakArrayRun { state, settled, transversal, warnings, trace, interrupted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ceer::Leaf;

    fn sets(state: &ArrayState) -> Vec<Vec<u64>> {
        state.sets().iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn hand_simulation_on_pairs() {
        let r = Leaf::intervals(&[2; 50]);
        let mut state = ArrayState::initial();
        let mut by_stage = vec![state.clone()];
        for _ in 0..7 {
            state = weakarray_step(&state, &r);
            by_stage.push(state.clone());
        }
        assert_eq!(sets(&by_stage[2]), vec![vec![0], vec![1]]);
        assert_eq!(sets(&by_stage[3]), vec![vec![0], vec![1, 2]]);
        assert_eq!(sets(&by_stage[5]), vec![vec![0], vec![1, 2], vec![3, 4]]);
        assert_eq!(sets(&by_stage[7]), vec![vec![0], vec![1, 2], vec![3, 4], vec![5, 6]]);
    }

    #[test]
    fn pairs_give_even_transversal() {
        let r = Leaf::intervals(&[2; 200]);
        let run = weakarray_run(&r, 60, 64, Limits::none()).unwrap();
        let t = run.transversal.elements();
        assert!(t.len() >= 20);
        for (k, &x) in t.iter().enumerate() {
            assert_eq!(x, 2 * k as u64);
        }
        assert!(run.verify(&r).iter().all(|c| c.passed));
        assert!(run.warnings.is_empty());
    }

    #[test]
    fn identity_gives_singletons() {
        let run = weakarray_run(&Leaf::IdOmega, 30, 64, Limits::none()).unwrap();
        for (n, set) in run.state.sets().iter().enumerate() {
            assert_eq!(set.iter().copied().collect::<Vec<_>>(), vec![n as u64]);
        }
        assert_eq!(run.transversal.elements(), (0..30).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn infinite_class_triggers_warning() {
        let run = weakarray_run(&Leaf::IdN(1), 40, 10, Limits::none()).unwrap();
        assert_eq!(run.warnings.len(), 1);
    }
}
