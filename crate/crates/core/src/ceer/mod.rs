//! Ceers presented as stage approximations.
//!
//! A [`StagedCeer`] is a uniformly decidable family `R_0 ⊆ R_1 ⊆ ...` of
//! equivalence relations on ω with `R_0` the identity; the ceer itself is the
//! union. Everything here answers stage-bounded questions only: a positive
//! answer at stage `s` is final, a negative one is not.

mod combinators;
mod leaves;
mod reduction;
mod spec;
mod syntax;

pub use combinators::{cylindrify, restrict, uniform_join, Cylinder, Join, Restriction};
pub use leaves::{FromPairs, Leaf, UnidimensionalCe};
pub use reduction::{
    check_reduction, check_reduction_at, check_reduction_with, default_verify_stage, image_of_array_under_reduction,
    image_of_array_under_map, ReductionError, ReductionReport, Side, StrongArray, Verdict,
};
pub use spec::{build, CeerSpec, SpecError};
pub use syntax::parse_spec;

use std::fmt;
use std::sync::Arc;

use crate::Stage;

pub trait StagedCeer: Send + Sync + fmt::Debug {
    /// `x R_s y`.
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool;

    /// Stage-bounded facts worth reporting, e.g. points of a restriction whose
    /// surjection has not converged yet.
    fn diagnostics(&self, _stage: Stage, _horizon: u64) -> Vec<Diagnostic> {
        Vec::new()
    }
}

pub type CeerRef = Arc<dyn StagedCeer>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    /// The restriction map has not converged on `point` by `stage`; the point
    /// is discrete for now.
    PendingSurjection { point: u64, stage: Stage },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::PendingSurjection { point, stage } => {
                write!(f, "restriction map undefined on {point} at stage {stage}")
            }
        }
    }
}

/// The partition of `{0, ..., horizon}` induced by `R_s`, blocks ordered by
/// their least element.
pub fn classes_at(r: &dyn StagedCeer, stage: Stage, horizon: u64) -> Vec<Vec<u64>> {
    let mut blocks: Vec<Vec<u64>> = Vec::new();
    for x in 0..=horizon {
        match blocks.iter_mut().find(|b| r.decide_at(stage, b[0], x)) {
            Some(block) => block.push(x),
            None => blocks.push(vec![x]),
        }
    }
    blocks
}

/// A pair witnessing that `R_s` fails to be an equivalence relation (or the
/// family fails to be monotone) on a bounded square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub stage: Stage,
    pub x: u64,
    pub y: u64,
    pub kind: AxiomKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomKind {
    NotEquivalence,
    NotIdentityAtZero,
    NotMonotone,
}

/// Exact test that `R_s` restricted to `[0, horizon]²` is an equivalence
/// relation: groups points by their first related representative and then
/// checks that `R_s` coincides with "same group" on every ordered pair.
pub fn check_equivalence(r: &dyn StagedCeer, stage: Stage, horizon: u64) -> Result<(), AxiomViolation> {
    let mut reps: Vec<u64> = Vec::new();
    let mut group = Vec::with_capacity(horizon as usize + 1);
    for x in 0..=horizon {
        match reps.iter().position(|&rep| r.decide_at(stage, rep, x)) {
            Some(g) => group.push(g),
            None => {
                group.push(reps.len());
                reps.push(x);
            }
        }
    }
    for x in 0..=horizon {
        for y in 0..=horizon {
            if r.decide_at(stage, x, y) != (group[x as usize] == group[y as usize]) {
                return Err(AxiomViolation { stage, x, y, kind: AxiomKind::NotEquivalence });
            }
        }
    }
    Ok(())
}

/// Checks every stage axiom on `[0, horizon]²` for stages `0..=max_stage`:
/// each `R_s` an equivalence, `R_0` the identity, `R_s ⊆ R_{s+1}`.
pub fn check_stage_axioms(r: &dyn StagedCeer, max_stage: Stage, horizon: u64) -> Result<(), AxiomViolation> {
    for x in 0..=horizon {
        for y in 0..=horizon {
            if r.decide_at(0, x, y) != (x == y) {
                return Err(AxiomViolation { stage: 0, x, y, kind: AxiomKind::NotIdentityAtZero });
            }
        }
    }
    for s in 0..=max_stage {
        check_equivalence(r, s, horizon)?;
        if s < max_stage {
            for x in 0..=horizon {
                for y in 0..=horizon {
                    if r.decide_at(s, x, y) && !r.decide_at(s + 1, x, y) {
                        return Err(AxiomViolation { stage: s, x, y, kind: AxiomKind::NotMonotone });
                    }
                }
            }
        }
    }
    Ok(())
}
