//! Color-constrained arborescences of an acyclic rooted graph.
//!
//! On a DAG every choice of one in-edge per non-root vertex is an
//! arborescence, so each solver only has to decide which color enters each
//! vertex. Five solvers are provided:
//!
//! * [`cc_arb_flow`]: maximum flow on the auxiliary color/vertex network.
//! * [`cc_arb_match`]: maximum bipartite matching between color slots and vertices.
//! * [`cc_rb_arb`]: linear-time counting argument for two colors.
//! * [`min_cc_arb_flow`]: minimum-cost maximum flow for the lightest tree.
//! * [`min_cc_rb_arb`]: sorting-based exchange argument for two colors.
//!
//! Whenever a color has been chosen for a vertex, the tree edge is the
//! smallest-`original_index` edge of that color entering it (the lightest one,
//! ties by index, for the minimum-weight solvers).

mod flow_based;
mod matching_based;
mod red_blue;
mod verify;

pub use flow_based::{cc_arb_flow, cc_arb_flow_instrumented, min_cc_arb_flow, min_cc_arb_flow_instrumented};
pub use matching_based::cc_arb_match;
pub use red_blue::{cc_rb_arb, min_cc_rb_arb, MinRedBlueSplit, RbPartition, RedBlueSplit};
pub use verify::{verify_arborescence, ArbReport, Violation};

use thiserror::Error;

use crate::graph::{ColorConstraint, ColoredDigraph, ConstraintError, EdgeId, VertexId, Weight};
use crate::spg::SpgGraph;

/// A spanning out-tree given by the parent edge of every non-root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arborescence {
    pub root: VertexId,
    /// `parent_edge[v]` is the `original_index` of the edge entering `v`;
    /// `None` exactly at the root.
    pub parent_edge: Vec<Option<EdgeId>>,
    /// `color_counts[i - 1]` is the number of tree edges of color `i`.
    pub color_counts: Vec<usize>,
    pub total_weight: Weight,
}

impl Arborescence {
    /// Assembles a tree from parent edges, filling in color counts and weight
    /// from `g`. Edge ids not present in `g` are skipped in the tallies.
    pub fn from_parent_edges(g: &ColoredDigraph, root: VertexId, parent_edge: Vec<Option<EdgeId>>) -> Self {
        let mut color_counts = vec![0; g.q()];
        let mut total_weight: Weight = 0;
        for e in parent_edge.iter().flatten().filter_map(|&id| g.edge(id)) {
            color_counts[e.color - 1] += 1;
            total_weight += e.weight;
        }
        Self { root, parent_edge, color_counts, total_weight }
    }

    pub fn n(&self) -> usize {
        self.parent_edge.len()
    }

    /// `(vertex, parent edge id)` for every non-root vertex.
    pub fn tree_edges(&self) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.parent_edge.iter().enumerate().filter_map(|(v, e)| e.map(|e| (v, e)))
    }
}

/// Why no α-colored arborescence exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// A non-root vertex has no entering edge at all.
    NotRooted { vertex: VertexId },
    /// Even spending every (clamped) budget cannot cover `needed` vertices.
    BudgetBelowTreeSize { budget: usize, needed: usize },
    /// The auxiliary network's maximum flow is below `needed`.
    FlowDeficit { value: usize, needed: usize },
    /// The maximum matching leaves some vertex unmatched.
    MatchingDeficit { matched: usize, needed: usize },
    /// Vertices reachable only through `color` outnumber its budget.
    ForcedColorOverBudget { color: usize, forced: usize, budget: usize },
    /// Vertices that accept either color exceed the combined leftover budget.
    SharedOverBudget { shared: usize, slack: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArbOutcome {
    Feasible(Arborescence),
    Infeasible(Infeasibility),
}

impl ArbOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ArbOutcome::Feasible(_))
    }

    pub fn tree(&self) -> Option<&Arborescence> {
        match self {
            ArbOutcome::Feasible(t) => Some(t),
            ArbOutcome::Infeasible(_) => None,
        }
    }

    pub fn into_tree(self) -> Option<Arborescence> {
        match self {
            ArbOutcome::Feasible(t) => Some(t),
            ArbOutcome::Infeasible(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArbError {
    #[error("the red-blue solvers need exactly 2 colors, got {q}")]
    WrongColorCount { q: usize },
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// Checks the constraint length and that every non-root vertex has an
/// entering edge. `Some` carries the short-circuit answer.
fn preflight(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<Option<Infeasibility>, ArbError> {
    alpha.check_len(g_s.q())?;
    let indeg = g_s.base().in_degrees();
    let orphan = (0..g_s.n()).find(|&v| v != g_s.root() && indeg[v] == 0);
    Ok(orphan.map(|vertex| Infeasibility::NotRooted { vertex }))
}

/// The single-vertex tree.
fn trivial_tree(g_s: &SpgGraph) -> Arborescence {
    Arborescence::from_parent_edges(g_s.base(), g_s.root(), vec![None; g_s.n()])
}
