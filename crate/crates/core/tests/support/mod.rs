//! Shared corpus and brute-force oracles for the integration tests and the
//! acceptance suite.

#![allow(dead_code)]

use ceerlab::{build, parse_spec, CeerRef, StagedCeer};

/// `W_e` = the even numbers.
pub const EVENS: &str = "7427961356633134377455321088";
/// `φ(x) = ⌊x / 2⌋`.
pub const HALVING: &str = "1356947172932732653324706774015389266437323197024029233525853658250209132544";

/// Specs covering every leaf and combinator.
pub fn corpus_texts() -> Vec<String> {
    let mut specs: Vec<String> = [
        "(id)",
        "(idn 1)",
        "(idn 4)",
        "(mod 3)",
        "(intervals 2 2)",
        "(intervals 3 1 2)",
        "(uni {0,2,5})",
        "(pairs 0)",
        "(uni-ce 4)",
        "(cyl (mod 2))",
        "(join (intervals 2 2) (mod 3))",
        "(cyl (join (id) (uni {1,3})))",
        "(join (restrict (intervals 2) 0) (uni-ce 4))",
    ]
    .map(String::from)
    .to_vec();
    specs.push(format!("(uni-ce {EVENS})"));
    specs.push(format!("(pairs {EVENS})"));
    specs.push(format!("(restrict (mod 3) {HALVING})"));
    specs.push(format!("(restrict (pairs {EVENS}) 6)"));
    specs
}

pub fn corpus() -> Vec<(String, CeerRef)> {
    corpus_texts()
        .into_iter()
        .map(|text| {
            let r = build(&parse_spec(&text).expect("corpus spec parses")).expect("corpus spec builds");
            (text, r)
        })
        .collect()
}

/// `label[x]` = least `y ≤ x` with `x R_s y`.
pub fn least_labels(r: &dyn StagedCeer, stage: u64, horizon: u64) -> Vec<u64> {
    (0..=horizon).map(|x| (0..=x).find(|&y| r.decide_at(stage, y, x)).expect("x R x")).collect()
}

/// `R_s` on `[0, horizon]²` is an equivalence relation iff it is the kernel
/// of its least-related labelling.
pub fn equivalence_failure(r: &dyn StagedCeer, stage: u64, horizon: u64) -> Option<(u64, u64)> {
    let label = least_labels(r, stage, horizon);
    for x in 0..=horizon {
        for y in 0..=horizon {
            if r.decide_at(stage, x, y) != (label[x as usize] == label[y as usize]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Every stage axiom for stages `0..=max_stage`, as a failure message.
pub fn stage_axiom_failure(r: &dyn StagedCeer, max_stage: u64, horizon: u64) -> Option<String> {
    for x in 0..=horizon {
        for y in 0..=horizon {
            if r.decide_at(0, x, y) != (x == y) {
                return Some(format!("R_0 relates {x} and {y}"));
            }
        }
    }
    for s in 0..=max_stage {
        if let Some((x, y)) = equivalence_failure(r, s, horizon) {
            return Some(format!("R_{s} is not an equivalence at ({x}, {y})"));
        }
        for x in 0..=horizon {
            for y in 0..=horizon {
                if r.decide_at(s, x, y) && !r.decide_at(s + 1, x, y) {
                    return Some(format!("{x} R_{s} {y} but not at stage {}", s + 1));
                }
            }
        }
    }
    None
}

/// Least elements of the `R_s`-classes meeting `[0, horizon]`.
pub fn principal(r: &dyn StagedCeer, stage: u64, horizon: u64) -> Vec<u64> {
    least_labels(r, stage, horizon).iter().enumerate().filter(|&(x, &l)| x as u64 == l).map(|(x, _)| x as u64).collect()
}
