use proptest::prelude::*;

use super::*;
use crate::graph::fixtures::*;
use crate::spg::SpgError;
use crate::testkit::gen::gen_rooted_positive_digraph;
use crate::testkit::{brute_at_least_arb, brute_cc_spt};

fn alpha(a: &[usize]) -> ColorConstraint {
    ColorConstraint::new(a.to_vec())
}

#[test]
fn diamond_spt() {
    let r = cc_spt(&diamond(), S, &alpha(&[2, 1])).unwrap();
    let r = r.result().unwrap();
    // Three unit edges; the tree path to t is a shortest path of weight 2.
    assert_eq!(r.tree.total_weight, 3);
    assert_eq!(r.distances.get(T), Some(2));
    assert_eq!(r.spg_edge_count, 4);
    assert_eq!(r.solver_used, SolverUsed::Rb);
    assert!(verify_spt(&diamond(), S, &r.tree, &alpha(&[2, 1])).is_ok());
}

#[test]
fn diamond_spt_without_blue_budget() {
    let out = cc_spt(&diamond(), S, &alpha(&[2, 0])).unwrap();
    assert!(!out.is_feasible());
    let forced = cc_spt_with(&diamond(), S, &alpha(&[2, 0]), &SptOptions { solver: Solver::Flow, ..Default::default() }).unwrap();
    assert!(matches!(forced, SptOutcome::Infeasible { solver_used: SolverUsed::Flow, .. }));
}

#[test]
fn vacuous_budget_always_feasible() {
    for seed in 0..20 {
        let g = gen_rooted_positive_digraph(7, 3, 0.3, 4, seed);
        assert!(cc_spt(&g, 0, &ColorConstraint::vacuous(3, 7)).unwrap().is_feasible());
    }
}

#[test]
fn min_spt_on_weighted_diamond() {
    let r = min_cc_spt(&weighted_diamond(), S, &alpha(&[2, 1])).unwrap();
    assert_eq!(r.result().unwrap().tree.total_weight, 3);
    // (b,t) weighs 5 and is not on a shortest path, so t must take (a,t),
    // which colors 1 cannot afford twice.
    assert!(!min_cc_spt(&weighted_diamond(), S, &alpha(&[1, 2])).unwrap().is_feasible());
}

#[test]
fn min_spt_with_vacuous_budget_takes_lightest_tight_edges() {
    // Two tight parallel edges into 1 of different weight cannot exist, so use
    // zero-weight alternatives: 0 -> 1 (w 2), 0 -> 2 (w 1), 2 -> 1 (w 1).
    let g = ColoredDigraph::from_edges(3, 2, [(0, 1, 1, 2), (0, 2, 2, 1), (2, 1, 2, 1)]).unwrap();
    let r = min_cc_spt(&g, 0, &ColorConstraint::vacuous(2, 3)).unwrap();
    assert_eq!(r.result().unwrap().tree.total_weight, 2);
    let with_flow = min_cc_spt_with(&g, 0, &ColorConstraint::vacuous(2, 3), &SptOptions { solver: Solver::Flow, ..Default::default() });
    assert_eq!(with_flow.unwrap().result().unwrap().tree.total_weight, 2);
}

#[test]
fn matching_solver_has_no_min_variant() {
    let opts = SptOptions { solver: Solver::Match, ..Default::default() };
    assert!(matches!(min_cc_spt_with(&diamond(), S, &alpha(&[2, 1]), &opts), Err(SptError::SolverNotApplicable { .. })));
}

#[test]
fn pipeline_errors() {
    let neg = ColoredDigraph::from_edges(2, 1, [(0, 1, 1, -1), (1, 0, 1, -1)]).unwrap();
    assert!(matches!(cc_spt(&neg, 0, &alpha(&[1])), Err(SptError::Sssp(_))));
    let zero = ColoredDigraph::from_edges(3, 1, [(0, 1, 1, 1), (1, 2, 1, 0), (2, 1, 1, 0)]).unwrap();
    assert!(matches!(cc_spt(&zero, 0, &alpha(&[2])), Err(SptError::Spg(SpgError::NonPositiveCycle { .. }))));
    let unreachable = ColoredDigraph::from_edges(3, 1, [(0, 1, 1, 1)]).unwrap();
    assert!(matches!(cc_spt(&unreachable, 0, &alpha(&[2])), Err(SptError::Spg(SpgError::UnreachableVertex { vertex: 2 }))));
}

#[test]
fn verify_spt_catches_non_tight_edge_and_wrong_root() {
    let g = weighted_diamond();
    let t = Arborescence::from_parent_edges(&g, S, vec![None, Some(0), Some(1), Some(3)]);
    let report = verify_spt(&g, S, &t, &alpha(&[3, 3]));
    assert_eq!(report.violations, vec![SptViolation::NotShortest { vertex: T, tree_distance: 6, shortest: Some(2) }]);
    assert!(!verify_spt(&g, A, &t, &alpha(&[3, 3])).is_ok());
}

#[test]
fn at_least_transform_shapes() {
    let g = ColoredDigraph::from_edges(3, 1, [(0, 1, 1, 1), (1, 2, 1, 1)]).unwrap();
    let tr = at_least_transform(&g, &alpha(&[0])).unwrap();
    assert_eq!(tr.alpha.as_slice(), &[0, 2]);
    assert_eq!((tr.graph.m(), tr.graph.q()), (4, 2));
    assert!(cc_spt(&tr.graph, 0, &tr.alpha).unwrap().is_feasible());

    let tr = at_least_transform(&diamond(), &alpha(&[2, 1])).unwrap();
    assert_eq!(tr.alpha.as_slice(), &[2, 1, 0]);
    let r = cc_spt(&tr.graph, S, &tr.alpha).unwrap();
    let back = tr.pull_back(&diamond(), &r.result().unwrap().tree);
    assert_eq!(back.color_counts, vec![2, 1]);
    assert!(verify_spt(&diamond(), S, &back, &ColorConstraint::vacuous(2, 4)).is_ok());

    assert_eq!(at_least_transform(&diamond(), &alpha(&[2, 2])), Err(TransformError::LowerBoundTooLarge { sum: 4, limit: 3 }));
}

#[test]
fn solver_names_round_trip() {
    for s in [Solver::Auto, Solver::Flow, Solver::Match, Solver::Rb] {
        assert_eq!(s.to_string().parse::<Solver>(), Ok(s));
    }
    assert!("dinic".parse::<Solver>().is_err());
}

fn positive_instance() -> impl Strategy<Value = (ColoredDigraph, ColorConstraint)> {
    (1usize..=7, 1usize..=3, 0.1f64..0.5, any::<u64>()).prop_flat_map(|(n, q, density, seed)| {
        let g = gen_rooted_positive_digraph(n, q, density, 3, seed);
        (Just(g), proptest::collection::vec(0..n, q)).prop_map(|(g, a)| (g, ColorConstraint::new(a)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pipelines_match_brute_force((g, a) in positive_instance()) {
        let oracle = brute_cc_spt(&g, 0, &a).unwrap();
        for solver in [Solver::Auto, Solver::Flow, Solver::Match] {
            let opts = SptOptions { solver, ..Default::default() };
            let out = cc_spt_with(&g, 0, &a, &opts).unwrap();
            prop_assert_eq!(out.is_feasible(), oracle.is_some());
            if let Some(r) = out.result() {
                prop_assert!(verify_spt(&g, 0, &r.tree, &a).is_ok());
            }
        }
        let min = min_cc_spt(&g, 0, &a).unwrap();
        prop_assert_eq!(min.result().map(|r| r.tree.total_weight), oracle);
    }

    #[test]
    fn at_least_matches_brute_force((g, lower) in positive_instance()) {
        let d = crate::sssp::sssp(&g, 0, crate::sssp::SsspMode::Auto).unwrap();
        let g_s = crate::spg::build_spg(&g, 0, &d).unwrap();
        match at_least_transform(&g, &lower) {
            Err(TransformError::LowerBoundTooLarge { .. }) => prop_assert!(lower.sum() > g.n() - 1),
            Err(e) => prop_assert!(false, "{e}"),
            Ok(tr) => {
                let out = cc_spt(&tr.graph, 0, &tr.alpha).unwrap();
                prop_assert_eq!(out.is_feasible(), brute_at_least_arb(&g_s, &lower).unwrap());
                if let Some(r) = out.result() {
                    let back = tr.pull_back(&g, &r.tree);
                    prop_assert!(back.color_counts.iter().zip(lower.as_slice()).all(|(c, l)| c >= l));
                }
            }
        }
    }
}
