use std::collections::HashMap;
use std::sync::Mutex;

use super::{Convergence, Program};
use crate::Stage;

#[derive(Clone, Copy, Debug)]
struct Probe {
    budget: Stage,
    result: Option<Convergence>,
}

/// A program with memoized convergence probes, so repeated `φ_{e,s}(i)`
/// queries across many stages do not re-run the machine every time.
///
/// The cache only ever records facts about bounded runs, so answers are
/// identical to [`super::phi_stage`].
#[derive(Debug)]
pub struct CachedProgram {
    program: Program,
    probes: Mutex<HashMap<u64, Probe>>,
}

impl CachedProgram {
    pub fn new(program: Program) -> CachedProgram {
        CachedProgram { program, probes: Mutex::new(HashMap::new()) }
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn phi_stage(&self, input: u64, stage: Stage) -> Option<u64> {
        if stage == 0 {
            return None;
        }
        let mut probes = self.probes.lock().unwrap();
        let probe = probes.get(&input).copied();
        let result = match probe {
            Some(p) if p.result.is_some() || p.budget >= stage => p.result,
            previous => {
                let budget = previous.map_or(stage, |p| stage.max(p.budget.saturating_mul(2)));
                let result = self.program.convergence(input, budget);
                probes.insert(input, Probe { budget, result });
                result
            }
        };
        result.filter(|c| c.stage <= stage).map(|c| c.value)
    }

    /// `i ∈ W_{e,s}`.
    pub fn enumerated_by(&self, input: u64, stage: Stage) -> bool {
        input < stage && self.phi_stage(input, stage).is_some()
    }
}
