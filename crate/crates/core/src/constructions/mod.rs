//! Stage-by-stage simulations of the constructions, each with the finite
//! checks its verification argument makes at every stage.
//!
//! Every run produces a line-oriented trace and can be cut short by a
//! wall-clock deadline, in which case the partial state and trace are kept.

pub mod allhigh;
pub mod census;
pub mod kk;
pub mod postsimple;
pub mod weakarray;

use std::fmt;
use std::time::Instant;

pub use allhigh::{allhigh_run, allhigh_step, f_stage, Action, AllHighCeer, AllHighRun, IntervalPartition};
pub use census::{avoidance_census, subword_closure_member};
pub use kk::{kk_extract, AlgebraPresentation, KkError, KkResult};
pub use postsimple::{postsimple_run, postsimple_step, EnumerationTable, PostSimpleRun, SimpleSetState};
pub use weakarray::{weakarray_run, weakarray_step, ArrayState, WeakArrayRun};

use crate::Stage;

/// Limits shared by all runs.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
}

impl Limits {
    pub fn none() -> Limits {
        Limits::default()
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// A run stopped by its deadline after completing `stage`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interrupted {
    pub stage: Stage,
}

/// One named finite check and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl InvariantCheck {
    fn new(name: &'static str, failure: Option<String>) -> InvariantCheck {
        match failure {
            None => InvariantCheck { name, passed: true, detail: String::new() },
            Some(detail) => InvariantCheck { name, passed: false, detail },
        }
    }
}

impl fmt::Display for InvariantCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{}: {}", self.name, verdict)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}
