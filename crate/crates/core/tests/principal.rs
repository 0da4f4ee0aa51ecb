mod support;

use ceerlab::transversal::{majorization_check, principal_at, principal_function_at, TransversalError, TransversalSample};
use proptest::prelude::*;

/// Greedy sample: walk `order`, keeping each number not related to one kept.
fn greedy(r: &dyn ceerlab::StagedCeer, stage: u64, order: &[u64]) -> Vec<u64> {
    let mut kept: Vec<u64> = Vec::new();
    for &x in order {
        if kept.iter().all(|&y| !r.decide_at(stage, x, y)) {
            kept.push(x);
        }
    }
    kept
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certified_samples_dominate_the_principal_transversal(
        which in 0usize..17,
        stage in 0u64..120,
        order in Just((0u64..=60).collect::<Vec<_>>()).prop_shuffle(),
        take in 1usize..30,
    ) {
        let corpus = support::corpus();
        let (text, r) = &corpus[which % corpus.len()];
        let mut sample = greedy(r.as_ref(), stage, &order[..take.min(order.len())]);
        let certified = TransversalSample::certify(r.as_ref(), stage, sample.iter().copied()).unwrap();
        sample.sort_unstable();
        prop_assert_eq!(certified.elements(), sample.as_slice());

        let least = support::principal(r.as_ref(), stage, 60);
        for (i, &t) in sample.iter().enumerate() {
            prop_assert!(t >= least[i], "{}: p_T({}) = {} < {}", text, i, t, least[i]);
        }
        prop_assert!(majorization_check(r.as_ref(), stage, &certified, 60).unwrap());
    }
}

#[test]
fn principal_matches_the_oracle_on_the_corpus() {
    for (text, r) in support::corpus() {
        for stage in [0, 5, 30, 150] {
            let expected = support::principal(r.as_ref(), stage, 50);
            assert_eq!(principal_at(r.as_ref(), stage, 50).elements(), expected.as_slice(), "{text} at {stage}");
            for (k, &p) in expected.iter().enumerate() {
                assert_eq!(principal_function_at(r.as_ref(), stage, k as u64, 50), Ok(p));
            }
        }
    }
}

#[test]
fn principal_transversal_only_shrinks() {
    for (text, r) in support::corpus() {
        let mut previous = support::principal(r.as_ref(), 0, 40);
        for stage in 1..80 {
            let now = support::principal(r.as_ref(), stage, 40);
            assert!(now.iter().all(|x| previous.contains(x)), "{text} at {stage}");
            previous = now;
        }
    }
}

#[test]
fn related_pairs_are_not_certified() {
    let r = ceerlab::build(&ceerlab::parse_spec("(mod 3)").unwrap()).unwrap();
    assert_eq!(
        TransversalSample::certify(r.as_ref(), 10, [1, 4]),
        Err(TransversalError::NotCertified { stage: 10, x: 1, y: 4 })
    );
    assert!(TransversalSample::certify(r.as_ref(), 4, [1, 4]).is_ok());
}

#[test]
fn horizon_errors_name_the_shortfall() {
    let r = ceerlab::build(&ceerlab::parse_spec("(idn 2)").unwrap()).unwrap();
    assert_eq!(
        principal_function_at(r.as_ref(), 50, 2, 20),
        Err(TransversalError::InsufficientHorizon { wanted: 2, found: 2, horizon: 20, stage: 50 })
    );
}
