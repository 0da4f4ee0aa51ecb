//! Bounded checks of computable reductions `x R y ⇔ f(x) S f(y)` and the
//! transport of strong disjoint arrays along injective maps.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use super::StagedCeer;
use crate::machine::{Program, StageOutcome};
use crate::Stage;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("f-partial: no convergence within budget on inputs {inputs:?}")]
    Partial { inputs: Vec<u64> },
    #[error("map is not injective on the array support: f({x}) = f({y}) = {image}")]
    NotInjective { x: u64, y: u64, image: u64 },
    #[error("array sets {first} and {second} share {element}")]
    Overlap { first: usize, second: usize, element: u64 },
}

/// Which half of `x R y ⇔ f(x) S f(y)` failed. Positive facts are read at
/// the observation stage, missing ones at the verification stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x R_s y` but `f(x)` and `f(y)` are not `S_t`-related.
    Forward,
    /// `f(x) S_s f(y)` but `x` and `y` are not `R_t`-related.
    Backward,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Forward => "forward",
            Side::Backward => "backward",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Counterexample { x: u64, y: u64, side: Side },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub verdict: Verdict,
    pub stage: Stage,
    pub verify_stage: Stage,
    pub horizon: u64,
    /// Always set: negative facts were only checked up to `verify_stage`,
    /// so `Consistent` is evidence, not proof.
    pub stage_bounded: bool,
}

/// Runs `f` on `0..=horizon` with a step budget, collecting the inputs it
/// fails to halt on.
fn evaluate(f: &Program, inputs: impl Iterator<Item = u64>, budget: u64) -> Result<HashMap<u64, u64>, ReductionError> {
    let mut values = HashMap::new();
    let mut divergent = Vec::new();
    for x in inputs {
        match f.run(x, budget) {
            StageOutcome::Halted { value, .. } => {
                values.insert(x, value);
            }
            StageOutcome::Running => divergent.push(x),
        }
    }
    if divergent.is_empty() {
        Ok(values)
    } else {
        Err(ReductionError::Partial { inputs: divergent })
    }
}

/// Default verification stage: past `stage` and past every number the check
/// touches, so canonically approximated decidable leaves are read exactly.
pub fn default_verify_stage(stage: Stage, horizon: u64, images: &[u64]) -> Stage {
    let top = images.iter().copied().max().unwrap_or(0).max(horizon);
    stage.max(top.saturating_add(1))
}

pub fn check_reduction(
    f: &Program,
    budget: u64,
    r: &dyn StagedCeer,
    s: &dyn StagedCeer,
    horizon: u64,
    stage: Stage,
) -> Result<ReductionReport, ReductionError> {
    let values = evaluate(f, 0..=horizon, budget)?;
    Ok(check_reduction_with(|x| values[&x], r, s, horizon, stage))
}

/// Same check with `f` given as a total Rust function.
pub fn check_reduction_with(
    f: impl Fn(u64) -> u64,
    r: &dyn StagedCeer,
    s: &dyn StagedCeer,
    horizon: u64,
    stage: Stage,
) -> ReductionReport {
    let images: Vec<u64> = (0..=horizon).map(&f).collect();
    let verify = default_verify_stage(stage, horizon, &images);
    check_images(&images, r, s, stage, verify)
}

/// The check with an explicit verification stage (clamped to `≥ stage`).
pub fn check_reduction_at(
    f: impl Fn(u64) -> u64,
    r: &dyn StagedCeer,
    s: &dyn StagedCeer,
    horizon: u64,
    stage: Stage,
    verify_stage: Stage,
) -> ReductionReport {
    let images: Vec<u64> = (0..=horizon).map(&f).collect();
    check_images(&images, r, s, stage, verify_stage.max(stage))
}

fn check_images(images: &[u64], r: &dyn StagedCeer, s: &dyn StagedCeer, stage: Stage, verify: Stage) -> ReductionReport {
    let horizon = images.len() as u64 - 1;
    let mut verdict = Verdict::Consistent;
    'outer: for x in 0..=horizon {
        for y in x + 1..=horizon {
            let (fx, fy) = (images[x as usize], images[y as usize]);
            if r.decide_at(stage, x, y) && !s.decide_at(verify, fx, fy) {
                verdict = Verdict::Counterexample { x, y, side: Side::Forward };
                break 'outer;
            }
            if s.decide_at(stage, fx, fy) && !r.decide_at(verify, x, y) {
                verdict = Verdict::Counterexample { x, y, side: Side::Backward };
                break 'outer;
            }
        }
    }
    ReductionReport { verdict, stage, verify_stage: verify, horizon, stage_bounded: true }
}

/// A finite prefix of a strong disjoint array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongArray {
    sets: Vec<BTreeSet<u64>>,
}

impl StrongArray {
    pub fn new(sets: Vec<BTreeSet<u64>>) -> Result<StrongArray, ReductionError> {
        let mut owner: HashMap<u64, usize> = HashMap::new();
        for (n, set) in sets.iter().enumerate() {
            for &x in set {
                if let Some(&first) = owner.get(&x) {
                    return Err(ReductionError::Overlap { first, second: n, element: x });
                }
                owner.insert(x, n);
            }
        }
        Ok(StrongArray { sets })
    }

    pub fn sets(&self) -> &[BTreeSet<u64>] {
        &self.sets
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.sets.iter().flatten().copied()
    }
}

/// `(f[A_n])_n` for `f` computed by a program.
pub fn image_of_array_under_reduction(f: &Program, array: &StrongArray, budget: u64) -> Result<StrongArray, ReductionError> {
    let values = evaluate(f, array.support(), budget)?;
    image_of_array_under_map(|x| values[&x], array)
}

/// `(f[A_n])_n`, rejecting `f` that is not injective on `∪A`.
pub fn image_of_array_under_map(f: impl Fn(u64) -> u64, array: &StrongArray) -> Result<StrongArray, ReductionError> {
    let mut preimage: HashMap<u64, u64> = HashMap::new();
    let mut sets = Vec::with_capacity(array.sets.len());
    for set in &array.sets {
        let mut image = BTreeSet::new();
        for &x in set {
            let fx = f(x);
            if let Some(&y) = preimage.get(&fx) {
                return Err(ReductionError::NotInjective { x: y, y: x, image: fx });
            }
            preimage.insert(fx, x);
            image.insert(fx);
        }
        sets.push(image);
    }
    Ok(StrongArray { sets })
}
