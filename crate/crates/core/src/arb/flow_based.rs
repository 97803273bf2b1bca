use crate::flow::{
    build_arb_network, build_min_arb_network, dinitz_max_flow, min_cost_max_flow, FlowStats, InEdgeTable,
};
use crate::graph::ColorConstraint;
use crate::spg::SpgGraph;

use super::{preflight, trivial_tree, ArbError, ArbOutcome, Arborescence, Infeasibility};

/// Decides and builds an α-colored arborescence of `g_s` through a maximum
/// flow on the auxiliary network.
pub fn cc_arb_flow(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<ArbOutcome, ArbError> {
    cc_arb_flow_instrumented(g_s, alpha).map(|(outcome, _)| outcome)
}

/// [`cc_arb_flow`] plus the Dinitz operation counts (`None` when the answer
/// was settled before any flow computation).
pub fn cc_arb_flow_instrumented(
    g_s: &SpgGraph,
    alpha: &ColorConstraint,
) -> Result<(ArbOutcome, Option<FlowStats>), ArbError> {
    if let Some(reason) = preflight(g_s, alpha)? {
        return Ok((ArbOutcome::Infeasible(reason), None));
    }
    let needed = g_s.n().saturating_sub(1);
    if needed == 0 {
        return Ok((ArbOutcome::Feasible(trivial_tree(g_s)), None));
    }
    let alpha = alpha.clamped(needed);
    if alpha.sum() < needed {
        let reason = Infeasibility::BudgetBelowTreeSize { budget: alpha.sum(), needed };
        return Ok((ArbOutcome::Infeasible(reason), None));
    }

    let pi = g_s.base().in_degree_by_color();
    let h = build_arb_network(g_s, &alpha, &pi);
    let f = dinitz_max_flow(&h.network);
    let value = f.value as usize;
    if value < needed {
        return Ok((ArbOutcome::Infeasible(Infeasibility::FlowDeficit { value, needed }), Some(f.stats)));
    }

    let table = InEdgeTable::new(g_s);
    let mut parent = vec![None; g_s.n()];
    for (v, color) in h.colors_used(&f) {
        parent[v] = table.first(v, color);
    }
    let tree = Arborescence::from_parent_edges(g_s.base(), g_s.root(), parent);
    Ok((ArbOutcome::Feasible(tree), Some(f.stats)))
}

/// Minimum-weight α-colored arborescence of `g_s`. Arc `(i, v)` of the
/// network costs the lightest color-`i` edge into `v`; a minimum-cost maximum
/// flow then selects colors, and the lightest edge of the selected color
/// enters each vertex.
pub fn min_cc_arb_flow(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<ArbOutcome, ArbError> {
    min_cc_arb_flow_instrumented(g_s, alpha).map(|(outcome, _)| outcome)
}

pub fn min_cc_arb_flow_instrumented(
    g_s: &SpgGraph,
    alpha: &ColorConstraint,
) -> Result<(ArbOutcome, Option<FlowStats>), ArbError> {
    if let Some(reason) = preflight(g_s, alpha)? {
        return Ok((ArbOutcome::Infeasible(reason), None));
    }
    let needed = g_s.n().saturating_sub(1);
    if needed == 0 {
        return Ok((ArbOutcome::Feasible(trivial_tree(g_s)), None));
    }
    let alpha = alpha.clamped(needed);
    if alpha.sum() < needed {
        let reason = Infeasibility::BudgetBelowTreeSize { budget: alpha.sum(), needed };
        return Ok((ArbOutcome::Infeasible(reason), None));
    }

    let table = InEdgeTable::new(g_s);
    let h = build_min_arb_network(g_s, &alpha, &table);
    let f = min_cost_max_flow(&h.network);
    let value = f.value as usize;
    if value < needed {
        return Ok((ArbOutcome::Infeasible(Infeasibility::FlowDeficit { value, needed }), Some(f.stats)));
    }

    let mut parent = vec![None; g_s.n()];
    for (v, color) in h.colors_used(&f) {
        parent[v] = table.lightest(v, color).map(|(_, id)| id);
    }
    let tree = Arborescence::from_parent_edges(g_s.base(), g_s.root(), parent);
    debug_assert_eq!(tree.total_weight, f.total_cost);
    Ok((ArbOutcome::Feasible(tree), Some(f.stats)))
}
