use super::{CeerRef, Diagnostic, StagedCeer};
use crate::machine::CachedProgram;
use crate::pairing::unpair;
use crate::Stage;

/// `R_∞`: `⟨i, x⟩ ~ ⟨j, y⟩` iff `i R j`.
///
/// At stage `s` only second coordinates below `s` take part, which keeps
/// `R_0` the identity; for `s > max(x, y)` the stage relation is exactly
/// `i R_s j`.
#[derive(Debug)]
pub struct Cylinder {
    inner: CeerRef,
}

pub fn cylindrify(inner: CeerRef) -> Cylinder {
    Cylinder { inner }
}

impl StagedCeer for Cylinder {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        if x == y {
            return true;
        }
        let (i, a) = unpair(x);
        let (j, b) = unpair(y);
        a < stage && b < stage && self.inner.decide_at(stage, i, j)
    }

    fn diagnostics(&self, stage: Stage, horizon: u64) -> Vec<Diagnostic> {
        self.inner.diagnostics(stage, horizon)
    }
}

/// `R ⊕ S`: evens carry `R`, odds carry `S`.
#[derive(Debug)]
pub struct Join {
    even: CeerRef,
    odd: CeerRef,
}

pub fn uniform_join(even: CeerRef, odd: CeerRef) -> Join {
    Join { even, odd }
}

impl StagedCeer for Join {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        match (x % 2, y % 2) {
            (0, 0) => self.even.decide_at(stage, x / 2, y / 2),
            (1, 1) => self.odd.decide_at(stage, x / 2, y / 2),
            _ => false,
        }
    }

    fn diagnostics(&self, stage: Stage, horizon: u64) -> Vec<Diagnostic> {
        let mut d = self.even.diagnostics(stage, horizon / 2);
        d.extend(self.odd.diagnostics(stage, horizon / 2));
        d
    }
}

/// `R↾W` along a user-supplied surjection `π`: `x ~ y` iff `π(x) R π(y)`.
///
/// `π(x)` counts as available at stage `s` once `φ_{π,s}(x)` is defined;
/// until then `x` is discrete.
#[derive(Debug)]
pub struct Restriction {
    inner: CeerRef,
    surjection: CachedProgram,
}

pub fn restrict(inner: CeerRef, surjection: CachedProgram) -> Restriction {
    Restriction { inner, surjection }
}

impl StagedCeer for Restriction {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        if x == y {
            return true;
        }
        match (self.surjection.phi_stage(x, stage), self.surjection.phi_stage(y, stage)) {
            (Some(px), Some(py)) => self.inner.decide_at(stage, px, py),
            _ => false,
        }
    }

    fn diagnostics(&self, stage: Stage, horizon: u64) -> Vec<Diagnostic> {
        (0..=horizon)
            .filter(|&x| self.surjection.phi_stage(x, stage).is_none())
            .map(|point| Diagnostic::PendingSurjection { point, stage })
            .collect()
    }
}
