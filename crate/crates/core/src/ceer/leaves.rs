use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::StagedCeer;
use crate::dsu::{FrozenPartition, UnionFind};
use crate::machine::CachedProgram;
use crate::pairing::unpair;
use crate::Stage;

/// A decidable ceer under its canonical approximation
/// `R_s = (R ∩ [0, s)²) ∪ Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leaf {
    IdOmega,
    /// `n` classes: `{0}, {1}, ..., {n-2}` and everything `≥ n-1`.
    IdN(u64),
    Mod(u64),
    /// Consecutive intervals with the given sizes, then singletons. Stored as
    /// the exclusive end of each interval.
    Intervals(Vec<u64>),
    /// `R_X` for a finite explicit `X`.
    Unidimensional(BTreeSet<u64>),
}

impl Leaf {
    pub fn intervals(sizes: &[u64]) -> Leaf {
        let ends = sizes
            .iter()
            .scan(0u64, |end, &size| {
                *end += size;
                Some(*end)
            })
            .collect();
        Leaf::Intervals(ends)
    }

    /// The limit relation.
    pub fn relates(&self, x: u64, y: u64) -> bool {
        if x == y {
            return true;
        }
        match self {
            Leaf::IdOmega => false,
            Leaf::IdN(n) => x.min(n - 1) == y.min(n - 1),
            Leaf::Mod(k) => x % k == y % k,
            Leaf::Intervals(ends) => {
                let block = |v: u64| ends.partition_point(|&end| end <= v);
                let (bx, by) = (block(x), block(y));
                bx < ends.len() && bx == by
            }
            Leaf::Unidimensional(set) => set.contains(&x) && set.contains(&y),
        }
    }
}

impl StagedCeer for Leaf {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        x == y || (x < stage && y < stage && self.relates(x, y))
    }
}

/// `R_W` for `W = W_e`: `x R_s y` iff `x = y` or both are in `W_{e,s}`.
#[derive(Debug)]
pub struct UnidimensionalCe {
    set: CachedProgram,
}

impl UnidimensionalCe {
    pub fn new(set: CachedProgram) -> Self {
        UnidimensionalCe { set }
    }
}

impl StagedCeer for UnidimensionalCe {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        x == y || (self.set.enumerated_by(x, stage) && self.set.enumerated_by(y, stage))
    }
}

/// Equivalence closure of the pairs `unpair(n)` for `n ∈ W_{e,s}`,
/// recomputed per stage.
#[derive(Debug)]
pub struct FromPairs {
    pairs: CachedProgram,
    stages: Mutex<HashMap<Stage, Arc<FrozenPartition>>>,
}

impl FromPairs {
    pub fn new(pairs: CachedProgram) -> Self {
        FromPairs { pairs, stages: Mutex::new(HashMap::new()) }
    }

    fn partition(&self, stage: Stage) -> Arc<FrozenPartition> {
        if let Some(p) = self.stages.lock().unwrap().get(&stage) {
            return Arc::clone(p);
        }
        let mut uf = UnionFind::new();
        for n in 0..stage {
            if self.pairs.enumerated_by(n, stage) {
                let (x, y) = unpair(n);
                uf.union(x, y);
            }
        }
        let p = Arc::new(uf.freeze());
        self.stages.lock().unwrap().insert(stage, Arc::clone(&p));
        p
    }
}

impl StagedCeer for FromPairs {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        x == y || self.partition(stage).same(x, y)
    }
}
