//! The free semigroup `{a, b}⁺` split into coding words `C = {a bⁱ a : i ≥ 1}`,
//! words properly containing a coding word (`C₊`) and words avoiding them
//! (`C₋`), and the semigroups built from a ceer `R` on top of that split.
//!
//! Coding word `a bⁱ a` carries the number `i - 1`. In `S(R)` two coding words
//! are equal iff their numbers are `R`-related, `C₊` collapses to a single
//! class and `C₋` stays discrete. The finite-class variant drops the `C₊`
//! collapse and keeps only the coding relations.

mod avoiding;
mod closure;

use std::fmt;

pub use avoiding::{avoiding_count, avoiding_rank, avoiding_unrank};
pub use closure::{
    congruence_closure, fincl_class_size, fincl_decide, predicted_class_size, ClassSize, Closure,
    ClosureBounds, FinClAnswer, Presentation, Variant,
};

use crate::ceer::{CeerRef, StagedCeer};
use crate::word::{word_decode, Word};
use crate::Stage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    /// Exactly `a bⁱ a`, `i ≥ 1`.
    Coding(u64),
    ContainsCoding,
    Avoiding,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Coding(i) => write!(f, "coding {i}"),
            Stratum::ContainsCoding => f.write_str("contains-coding"),
            Stratum::Avoiding => f.write_str("avoiding"),
        }
    }
}

/// A coding occurrence `a bⁱ a` inside a word: the run of `b`s occupies
/// `start..start + i`, with an `a` on either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub start: usize,
    pub exponent: u64,
}

/// All coding occurrences, left to right. They are exactly the maximal runs
/// of `b` with an `a` on both sides.
pub fn coding_occurrences(w: &[u8]) -> Vec<Occurrence> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        if w[i] == b'b' {
            let start = i;
            while i < w.len() && w[i] == b'b' {
                i += 1;
            }
            if start > 0 && i < w.len() {
                out.push(Occurrence { start, exponent: (i - start) as u64 });
            }
        } else {
            i += 1;
        }
    }
    out
}

pub fn classify(w: &Word) -> Stratum {
    classify_bytes(w.as_bytes())
}

pub(crate) fn classify_bytes(w: &[u8]) -> Stratum {
    let occ = coding_occurrences(w);
    match occ.as_slice() {
        [] => Stratum::Avoiding,
        [o] if o.start == 1 && o.exponent as usize + 2 == w.len() => Stratum::Coding(o.exponent),
        _ => Stratum::ContainsCoding,
    }
}

/// `u =_{S(R)} v` with `R` read at stage `s`.
pub fn sr_decide(r: &dyn StagedCeer, s: Stage, u: &Word, v: &Word) -> bool {
    if u == v {
        return true;
    }
    match (classify(u), classify(v)) {
        (Stratum::ContainsCoding, Stratum::ContainsCoding) => true,
        (Stratum::Coding(i), Stratum::Coding(j)) => r.decide_at(s, i - 1, j - 1),
        _ => false,
    }
}

/// Maps a word to `R ⊕ Id_ω`: coding `a bⁱ a` to `2(i-1)`, `C₊` to 1 and the
/// `k`-th avoiding word to `2k + 3`.
pub fn sr_to_join(w: &Word) -> u64 {
    match classify(w) {
        Stratum::Coding(i) => 2 * (i - 1),
        Stratum::ContainsCoding => 1,
        Stratum::Avoiding => {
            let k = avoiding_rank(w.as_bytes());
            k.checked_mul(2).and_then(|d| d.checked_add(3)).expect("avoiding rank overflowed u64")
        }
    }
}

pub fn sr_from_join(n: u64) -> Word {
    if n.is_multiple_of(2) {
        let mut bytes = vec![b'b'; (n / 2 + 1) as usize];
        bytes.insert(0, b'a');
        bytes.push(b'a');
        Word::from_bytes(bytes)
    } else if n == 1 {
        Word::from_bytes(b"aaba".to_vec())
    } else {
        Word::from_bytes(avoiding_unrank((n - 3) / 2))
    }
}

/// `=_{S(R)}` on word codes as a staged ceer. The `C₊` class is revealed
/// canonically (codes below the stage), the coding part follows `R_s`.
#[derive(Debug)]
pub struct SrWordProblem {
    r: CeerRef,
}

impl SrWordProblem {
    pub fn new(r: CeerRef) -> SrWordProblem {
        SrWordProblem { r }
    }
}

impl StagedCeer for SrWordProblem {
    fn decide_at(&self, stage: Stage, x: u64, y: u64) -> bool {
        if x == y {
            return true;
        }
        let (u, v) = (word_decode(x), word_decode(y));
        match (classify(&u), classify(&v)) {
            (Stratum::ContainsCoding, Stratum::ContainsCoding) => x < stage && y < stage,
            (Stratum::Coding(i), Stratum::Coding(j)) => self.r.decide_at(stage, i - 1, j - 1),
            _ => false,
        }
    }
}
