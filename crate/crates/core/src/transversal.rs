//! Principal transversals, principal functions and majorization evidence.
//!
//! The principal transversal `T_R` (least elements of all classes) of a ceer
//! is only co-c.e., so everything here is relative to a stage `s`: the
//! least elements of the `R_s`-classes meeting `[0, N]` over-approximate
//! `T_R ∩ [0, N]` and can only shrink as `s` grows.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ceer::{StagedCeer, StrongArray};
use crate::machine::{Program, StageOutcome};
use crate::Stage;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransversalError {
    #[error("insufficient horizon: wanted representative #{wanted} but only {found} classes meet [0, {horizon}] at stage {stage}")]
    InsufficientHorizon { wanted: u64, found: u64, horizon: u64, stage: Stage },
    #[error("g-partial: no convergence within budget on input {input}")]
    Partial { input: u64 },
    #[error("sample is not certified at stage {stage}: {x} and {y} are related")]
    NotCertified { stage: Stage, x: u64, y: u64 },
}

/// A finite set of pairwise `R_s`-inequivalent numbers, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalSample {
    elements: Vec<u64>,
    certified_stage: Stage,
}

impl TransversalSample {
    /// Certifies `elements` at `stage`, or reports a related pair.
    pub fn certify(r: &dyn StagedCeer, stage: Stage, elements: impl IntoIterator<Item = u64>) -> Result<Self, TransversalError> {
        let elements: Vec<u64> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for (i, &x) in elements.iter().enumerate() {
            for &y in &elements[i + 1..] {
                if r.decide_at(stage, x, y) {
                    return Err(TransversalError::NotCertified { stage, x, y });
                }
            }
        }
        Ok(TransversalSample { elements, certified_stage: stage })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn certified_stage(&self) -> Stage {
        self.certified_stage
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Least elements of the `R_s`-classes meeting `[0, horizon]`.
pub fn principal_at(r: &dyn StagedCeer, stage: Stage, horizon: u64) -> TransversalSample {
    let mut least: Vec<u64> = Vec::new();
    for x in 0..=horizon {
        if !least.iter().any(|&m| r.decide_at(stage, m, x)) {
            least.push(x);
        }
    }
    TransversalSample { elements: least, certified_stage: stage }
}

/// `p(k)` for the stage-`s` principal transversal, 0-indexed.
pub fn principal_function_at(r: &dyn StagedCeer, stage: Stage, k: u64, horizon: u64) -> Result<u64, TransversalError> {
    let p = principal_at(r, stage, horizon);
    principal_value(&p, k, horizon)
}

fn principal_value(p: &TransversalSample, k: u64, horizon: u64) -> Result<u64, TransversalError> {
    p.elements.get(k as usize).copied().ok_or(TransversalError::InsufficientHorizon {
        wanted: k,
        found: p.len() as u64,
        horizon,
        stage: p.certified_stage,
    })
}

pub fn is_transversal_at(r: &dyn StagedCeer, stage: Stage, set: &BTreeSet<u64>) -> bool {
    TransversalSample::certify(r, stage, set.iter().copied()).is_ok()
}

/// Does `p_T(i) ≥ p_{T_{R_s}}(i)` hold for every `i < |T|`?
///
/// For a certified sample inside `[0, horizon]` this always holds, so a
/// `false` here means a bug somewhere upstream.
pub fn majorization_check(r: &dyn StagedCeer, stage: Stage, sample: &TransversalSample, horizon: u64) -> Result<bool, TransversalError> {
    let principal = principal_at(r, stage, horizon);
    for (i, &t) in sample.elements.iter().enumerate() {
        if t < principal_value(&principal, i as u64, horizon)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does `bound(i) ≥ p_{T_{R_s}}(i)` hold for all `i ≤ k_max`?
pub fn majorizes_principal(bound: impl Fn(u64) -> u64, r: &dyn StagedCeer, stage: Stage, k_max: u64, horizon: u64) -> Result<bool, TransversalError> {
    let principal = principal_at(r, stage, horizon);
    for i in 0..=k_max {
        if bound(i) < principal_value(&principal, i, horizon)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`majorizes_principal`] with the bound computed by a program run for at
/// most `budget` steps per input.
pub fn majorizer_check(
    g: &Program,
    budget: u64,
    r: &dyn StagedCeer,
    stage: Stage,
    k_max: u64,
    horizon: u64,
) -> Result<bool, TransversalError> {
    let mut values = Vec::new();
    for i in 0..=k_max {
        match g.run(i, budget) {
            StageOutcome::Halted { value, .. } => values.push(value),
            StageOutcome::Running => return Err(TransversalError::Partial { input: i }),
        }
    }
    majorizes_principal(|i| values[i as usize], r, stage, k_max, horizon)
}

/// Does every set of the array meet `set`?
pub fn array_intersection_check(array: &StrongArray, set: &BTreeSet<u64>) -> bool {
    array.sets().iter().all(|a| a.iter().any(|x| set.contains(x)))
}
