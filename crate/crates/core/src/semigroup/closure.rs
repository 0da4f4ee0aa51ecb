//! Brute-force congruence closure over a presentation, used as an oracle for
//! the stratum rule and as the decision procedure of the finite-class
//! variant.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{classify_bytes, coding_occurrences, Stratum};
use crate::ceer::StagedCeer;
use crate::word::Word;
use crate::Stage;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Coding relations plus the collapse of `C₊`.
    Sr,
    /// Coding relations only.
    FinCl,
}

#[derive(Clone, Copy, Debug)]
pub struct Presentation<'a> {
    pub variant: Variant,
    pub r: &'a dyn StagedCeer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureBounds {
    /// Most words the search may visit.
    pub cap: usize,
    /// Longest word the search may visit. `None` leaves length unbounded,
    /// which is only finite for the finite-class variant.
    pub max_len: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    /// Visited words, length-lex sorted.
    pub words: BTreeSet<Word>,
    /// Set when the cap or the length bound cut the search short, so
    /// `words` is only a lower approximation of the class.
    pub truncated: bool,
}

/// Coding exponents `j` reachable from `i` in one step: `i - 1` and `j - 1`
/// both below the stage and `R_s`-related.
struct CodingMoves<'a> {
    r: &'a dyn StagedCeer,
    stage: Stage,
    memo: HashMap<u64, Vec<u64>>,
}

impl CodingMoves<'_> {
    fn partners(&mut self, i: u64) -> &[u64] {
        let (r, stage) = (self.r, self.stage);
        self.memo.entry(i).or_insert_with(|| {
            if i > stage {
                return Vec::new();
            }
            (0..stage).filter(|&y| y != i - 1 && r.decide_at(stage, i - 1, y)).map(|y| y + 1).collect()
        })
    }
}

struct Search {
    seen: HashSet<Vec<u8>>,
    queue: VecDeque<Vec<u8>>,
    truncated: bool,
    cap: usize,
    max_len: usize,
}

impl Search {
    /// Queues `next` if new. Returns `false` once the cap stops the search.
    fn visit(&mut self, next: Vec<u8>) -> bool {
        if next.len() > self.max_len {
            self.truncated = true;
            return true;
        }
        if self.seen.contains(&next) {
            return true;
        }
        if self.seen.len() >= self.cap {
            self.truncated = true;
            return false;
        }
        self.seen.insert(next.clone());
        self.queue.push_back(next);
        true
    }
}

fn splice(w: &[u8], from: usize, to: usize, middle: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(w.len() - (to - from) + middle.len());
    out.extend_from_slice(&w[..from]);
    out.extend_from_slice(middle);
    out.extend_from_slice(&w[to..]);
    out
}

/// All `C₊` words of length `1..=max_len`, bucketed by length.
fn contains_coding_by_length(max_len: usize) -> Vec<Vec<Vec<u8>>> {
    let mut buckets = vec![Vec::new(); max_len + 1];
    for w in Word::up_to_length(max_len) {
        if classify_bytes(w.as_bytes()) == Stratum::ContainsCoding {
            buckets[w.len()].push(w.as_bytes().to_vec());
        }
    }
    buckets
}

/// Breadth-first closure of `{w}` under single-occurrence replacement.
pub fn congruence_closure(p: Presentation<'_>, stage: Stage, w: &Word, bounds: ClosureBounds) -> Closure {
    let max_len = bounds.max_len.unwrap_or(usize::MAX);
    let sr_len = match p.variant {
        Variant::Sr => bounds.max_len.unwrap_or(w.len()),
        Variant::FinCl => 0,
    };
    let plus_words = if sr_len > 0 { contains_coding_by_length(sr_len) } else { Vec::new() };
    let mut moves = CodingMoves { r: p.r, stage, memo: HashMap::new() };

    let start = w.as_bytes().to_vec();
    let mut search = Search {
        seen: HashSet::from([start.clone()]),
        queue: VecDeque::from([start]),
        truncated: false,
        cap: bounds.cap,
        max_len,
    };

    'search: while let Some(cur) = search.queue.pop_front() {
        for occ in coding_occurrences(&cur) {
            let end = occ.start + occ.exponent as usize;
            for j in moves.partners(occ.exponent).to_vec() {
                if !search.visit(splice(&cur, occ.start, end, &vec![b'b'; j as usize])) {
                    break 'search;
                }
            }
        }
        if p.variant == Variant::Sr {
            for from in 0..cur.len() {
                for to in from + 1..=cur.len() {
                    if classify_bytes(&cur[from..to]) != Stratum::ContainsCoding {
                        continue;
                    }
                    // C₊ is infinite, so some replacement always falls outside the bound
                    search.truncated = true;
                    let rest = cur.len() - (to - from);
                    for words in plus_words.iter().take(sr_len.saturating_sub(rest) + 1).skip(1) {
                        for v in words {
                            if v.as_slice() != &cur[from..to] && !search.visit(splice(&cur, from, to, v)) {
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
    }

    let Search { seen, truncated, .. } = search;
    Closure { words: seen.into_iter().map(Word::from_bytes).collect(), truncated }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinClAnswer {
    Equal,
    Distinct,
    Unknown,
}

fn fincl(r: &dyn StagedCeer) -> Presentation<'_> {
    Presentation { variant: Variant::FinCl, r }
}

/// Word problem of the finite-class variant via closures.
pub fn fincl_decide(r: &dyn StagedCeer, stage: Stage, u: &Word, v: &Word, bounds: ClosureBounds) -> FinClAnswer {
    let cu = congruence_closure(fincl(r), stage, u, bounds);
    if cu.words.contains(v) {
        return FinClAnswer::Equal;
    }
    if !cu.truncated {
        return FinClAnswer::Distinct;
    }
    let cv = congruence_closure(fincl(r), stage, v, bounds);
    if cv.words.contains(u) {
        FinClAnswer::Equal
    } else if !cv.truncated {
        FinClAnswer::Distinct
    } else {
        FinClAnswer::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSize {
    pub size: u64,
    pub truncated: bool,
    pub predicted: Option<u64>,
}

/// Product of the stage-`s` class sizes over the coding occurrences of `w`,
/// or `None` when two occurrences share an `a`.
pub fn predicted_class_size(r: &dyn StagedCeer, stage: Stage, w: &Word) -> Option<u64> {
    let occ = coding_occurrences(w.as_bytes());
    let overlapping = occ.windows(2).any(|pair| pair[0].start + pair[0].exponent as usize + 1 == pair[1].start);
    if overlapping {
        return None;
    }
    let mut moves = CodingMoves { r, stage, memo: HashMap::new() };
    occ.iter().try_fold(1u64, |acc, o| acc.checked_mul(moves.partners(o.exponent).len() as u64 + 1))
}

pub fn fincl_class_size(r: &dyn StagedCeer, stage: Stage, w: &Word, bounds: ClosureBounds) -> ClassSize {
    let closure = congruence_closure(fincl(r), stage, w, bounds);
    ClassSize {
        size: closure.words.len() as u64,
        truncated: closure.truncated,
        predicted: predicted_class_size(r, stage, w),
    }
}
