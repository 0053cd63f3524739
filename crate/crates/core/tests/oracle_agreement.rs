//! Library operators against the independent brute-force oracle.

mod common;

use approx::assert_abs_diff_eq;
use common::{general_metric, SAMPLES, SEED};
use tensor3_decomp::oracle::{
    agreement, dimension_ledger, naive, rank_report, OperatorId, RANK_TOL, SUITE_TOL,
};
use tensor3_decomp::{sampling, Metric};

fn metrics() -> Vec<Metric> {
    vec![
        Metric::euclidean(),
        general_metric(),
        sampling::random_metric(&mut sampling::rng(SEED)),
    ]
}

#[test]
fn every_operator_agrees_on_100_tensors() {
    for m in metrics() {
        let checks = agreement(SEED, SAMPLES, &m);
        assert_eq!(checks.len(), OperatorId::all().len());
        for c in checks {
            assert!(c.ok, "{} differs by {:e}", c.operator, c.max_diff);
        }
    }
}

#[test]
fn materialized_matrices_agree() {
    for m in metrics() {
        for id in OperatorId::all() {
            let lib = id.materialize(&m);
            let ora = naive::materialize(id, &m);
            assert_abs_diff_eq!(lib.max_abs_diff(&ora), 0.0, epsilon = SUITE_TOL);
        }
    }
}

#[test]
fn oracle_ranks_match_expected_dimensions() {
    for m in metrics() {
        for id in OperatorId::all() {
            let r = rank_report(&naive::materialize(id, &m), RANK_TOL);
            assert_eq!(r.rank, id.expected_dimension(), "{id}");
            assert!(r.well_separated(), "{id}: gap {:e}", r.gap);
        }
    }
}

#[test]
fn matrix_action_matches_evaluation() {
    let m = general_metric();
    let mut rng = sampling::rng(SEED + 7);
    for id in OperatorId::all() {
        let mat = id.materialize(&m);
        for _ in 0..10 {
            let t = sampling::unit_tensor(&mut rng, id.variance());
            assert!(
                mat.apply(&t).max_abs_diff(&id.evaluate(&t, &m)) < SUITE_TOL,
                "{id}"
            );
        }
    }
}

#[test]
fn ledger_holds_for_general_metrics() {
    for m in metrics() {
        for line in dimension_ledger(&m) {
            assert!(line.ok, "{} ({})", line.equation, line.context);
            let sum: usize = line.parts.iter().map(|p| p.rank).sum();
            assert_eq!(sum, line.whole.rank, "{}", line.equation);
        }
    }
}
