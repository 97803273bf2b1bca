//! End-to-end shortest path tree pipelines: distances, shortest paths graph,
//! then an arborescence solver on that graph.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arb::{
    cc_arb_flow_instrumented, cc_arb_match, cc_rb_arb, min_cc_arb_flow_instrumented, min_cc_rb_arb,
    verify_arborescence, ArbError, ArbOutcome, Arborescence, Infeasibility, Violation,
};
use crate::flow::FlowStats;
use crate::graph::{ColorConstraint, ColoredDigraph, EdgeId, VertexId, Weight};
use crate::spg::{build_spg, SpgError, SpgGraph};
use crate::sssp::{bellman_ford, sssp, DistanceTable, SsspError, SsspMode};

/// Which arborescence algorithm to run. `Auto` uses the two-color solvers
/// when `q = 2` and the flow solvers otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    #[default]
    Auto,
    Flow,
    Match,
    Rb,
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Auto => "auto",
            Solver::Flow => "flow",
            Solver::Match => "match",
            Solver::Rb => "rb",
        })
    }
}

impl FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Solver::Auto),
            "flow" => Ok(Solver::Flow),
            "match" => Ok(Solver::Match),
            "rb" => Ok(Solver::Rb),
            other => Err(format!("unknown solver `{other}` (expected auto, flow, match or rb)")),
        }
    }
}

/// The algorithm that actually produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverUsed {
    Flow,
    Match,
    Rb,
    MinFlow,
    MinRb,
}

impl fmt::Display for SolverUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverUsed::Flow => "flow",
            SolverUsed::Match => "match",
            SolverUsed::Rb => "rb",
            SolverUsed::MinFlow => "min_flow",
            SolverUsed::MinRb => "min_rb",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SptError {
    #[error(transparent)]
    Sssp(#[from] SsspError),
    #[error(transparent)]
    Spg(#[from] SpgError),
    #[error(transparent)]
    Arb(#[from] ArbError),
    #[error("solver `{solver}` cannot be used here: {reason}")]
    SolverNotApplicable { solver: Solver, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SptResult {
    pub tree: Arborescence,
    pub distances: DistanceTable,
    pub spg_edge_count: usize,
    pub solver_used: SolverUsed,
    /// Dinitz counters when a maximum-flow stage ran.
    pub phase_stats: Option<FlowStats>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SptOutcome {
    Feasible(SptResult),
    Infeasible { reason: Infeasibility, solver_used: SolverUsed },
}

impl SptOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SptOutcome::Feasible(_))
    }

    pub fn result(&self) -> Option<&SptResult> {
        match self {
            SptOutcome::Feasible(r) => Some(r),
            SptOutcome::Infeasible { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SptOptions {
    pub solver: Solver,
    pub sssp_mode: SsspMode,
}

/// Runs the requested arborescence solver on an acyclic rooted graph.
pub fn solve_arb(
    g_s: &SpgGraph,
    alpha: &ColorConstraint,
    solver: Solver,
    minimize: bool,
) -> Result<(ArbOutcome, SolverUsed, Option<FlowStats>), SptError> {
    let solver = match solver {
        Solver::Auto if g_s.q() == 2 => Solver::Rb,
        Solver::Auto => Solver::Flow,
        other => other,
    };
    Ok(match (solver, minimize) {
        (Solver::Flow, false) => {
            let (outcome, stats) = cc_arb_flow_instrumented(g_s, alpha)?;
            (outcome, SolverUsed::Flow, stats)
        }
        (Solver::Match, false) => (cc_arb_match(g_s, alpha)?, SolverUsed::Match, None),
        (Solver::Rb, false) => (cc_rb_arb(g_s, alpha)?, SolverUsed::Rb, None),
        (Solver::Flow, true) => {
            let (outcome, stats) = min_cc_arb_flow_instrumented(g_s, alpha)?;
            (outcome, SolverUsed::MinFlow, stats)
        }
        (Solver::Rb, true) => (min_cc_rb_arb(g_s, alpha)?, SolverUsed::MinRb, None),
        (Solver::Match, true) => {
            return Err(SptError::SolverNotApplicable {
                solver,
                reason: "the matching solver has no minimum-weight variant",
            })
        }
        (Solver::Auto, _) => unreachable!("resolved above"),
    })
}

fn pipeline(
    g: &ColoredDigraph,
    s: VertexId,
    alpha: &ColorConstraint,
    opts: &SptOptions,
    minimize: bool,
) -> Result<SptOutcome, SptError> {
    alpha.check_len(g.q()).map_err(ArbError::from)?;
    let distances = sssp(g, s, opts.sssp_mode)?;
    let g_s = build_spg(g, s, &distances)?;
    let (outcome, solver_used, phase_stats) = solve_arb(&g_s, alpha, opts.solver, minimize)?;
    Ok(match outcome {
        ArbOutcome::Feasible(tree) => {
            debug_assert!(verify_spt(g, s, &tree, alpha).is_ok(), "{:?}", verify_spt(g, s, &tree, alpha));
            SptOutcome::Feasible(SptResult {
                tree,
                distances,
                spg_edge_count: g_s.base().m(),
                solver_used,
                phase_stats,
            })
        }
        ArbOutcome::Infeasible(reason) => SptOutcome::Infeasible { reason, solver_used },
    })
}

/// An α-colored shortest path tree of `g` from `s`, if one exists.
pub fn cc_spt(g: &ColoredDigraph, s: VertexId, alpha: &ColorConstraint) -> Result<SptOutcome, SptError> {
    cc_spt_with(g, s, alpha, &SptOptions::default())
}

pub fn cc_spt_with(
    g: &ColoredDigraph,
    s: VertexId,
    alpha: &ColorConstraint,
    opts: &SptOptions,
) -> Result<SptOutcome, SptError> {
    pipeline(g, s, alpha, opts, false)
}

/// A minimum-weight α-colored shortest path tree of `g` from `s`.
pub fn min_cc_spt(g: &ColoredDigraph, s: VertexId, alpha: &ColorConstraint) -> Result<SptOutcome, SptError> {
    min_cc_spt_with(g, s, alpha, &SptOptions::default())
}

pub fn min_cc_spt_with(
    g: &ColoredDigraph,
    s: VertexId,
    alpha: &ColorConstraint,
    opts: &SptOptions,
) -> Result<SptOutcome, SptError> {
    pipeline(g, s, alpha, opts, true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SptViolation {
    Arb(Violation),
    /// Distances could not be recomputed: a negative cycle is reachable.
    NegativeCycle,
    /// The tree path to `vertex` is not a shortest path.
    NotShortest { vertex: VertexId, tree_distance: Weight, shortest: Option<Weight> },
}

impl fmt::Display for SptViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SptViolation::Arb(v) => v.fmt(f),
            SptViolation::NegativeCycle => f.write_str("negative cycle reachable from the root"),
            SptViolation::NotShortest { vertex, tree_distance, shortest } => match shortest {
                Some(d) => write!(f, "vertex {vertex}: tree path weighs {tree_distance}, shortest is {d}"),
                None => write!(f, "vertex {vertex}: reached by the tree but unreachable in the graph"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SptReport {
    pub violations: Vec<SptViolation>,
}

impl SptReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `t` is an α-colored arborescence of `g` rooted at `s` whose
/// root-to-vertex paths are all shortest paths. Distances are recomputed
/// with Bellman-Ford regardless of the weights.
pub fn verify_spt(g: &ColoredDigraph, s: VertexId, t: &Arborescence, alpha: &ColorConstraint) -> SptReport {
    let arb = verify_arborescence(g, s, t, alpha);
    if !arb.is_ok() {
        return SptReport { violations: arb.violations.into_iter().map(SptViolation::Arb).collect() };
    }
    let Ok(d) = bellman_ford(g, s) else {
        return SptReport { violations: vec![SptViolation::NegativeCycle] };
    };
    let tree_dist = tree_distances(g, t);
    let violations = (0..g.n())
        .filter(|&v| d.get(v) != Some(tree_dist[v]))
        .map(|vertex| SptViolation::NotShortest { vertex, tree_distance: tree_dist[vertex], shortest: d.get(vertex) })
        .collect();
    SptReport { violations }
}

/// Root-to-vertex weights along a verified arborescence.
fn tree_distances(g: &ColoredDigraph, t: &Arborescence) -> Vec<Weight> {
    let n = g.n();
    let mut dist: Vec<Option<Weight>> = vec![None; n];
    dist[t.root] = Some(0);
    let mut stack = Vec::new();
    for start in 0..n {
        let mut v = start;
        while dist[v].is_none() {
            stack.push(v);
            v = g.edge(t.parent_edge[v].expect("non-root vertex has a parent")).unwrap().tail;
        }
        while let Some(u) = stack.pop() {
            let e = g.edge(t.parent_edge[u].unwrap()).unwrap();
            dist[u] = Some(dist[e.tail].unwrap() + e.weight);
        }
    }
    dist.into_iter().map(Option::unwrap).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("lower bounds sum to {sum}, more than n - 1 = {limit}")]
    LowerBoundTooLarge { sum: usize, limit: usize },
    #[error(transparent)]
    Arb(#[from] ArbError),
}

/// A graph with every edge duplicated in the extra color `q + 1`, and the
/// constraint `(lower_1, …, lower_q, n − 1 − Σ lower)`. An upper-bounded tree
/// of the transformed graph exists iff the original graph has a tree with at
/// least `lower_i` edges of each color `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtLeastTransform {
    pub graph: ColoredDigraph,
    pub alpha: ColorConstraint,
    /// `origin[id]` is the original edge behind edge `id` of the transformed
    /// graph; the first `m` edges are the originals, the next `m` their copies.
    pub origin: Vec<EdgeId>,
}

impl AtLeastTransform {
    /// Maps a tree of the transformed graph back onto the original edges.
    pub fn pull_back(&self, original: &ColoredDigraph, tree: &Arborescence) -> Arborescence {
        let parent = tree.parent_edge.iter().map(|e| e.map(|id| self.origin[id])).collect();
        Arborescence::from_parent_edges(original, tree.root, parent)
    }
}

pub fn at_least_transform(g: &ColoredDigraph, lower: &ColorConstraint) -> Result<AtLeastTransform, TransformError> {
    lower.check_len(g.q()).map_err(ArbError::from)?;
    let limit = g.n().saturating_sub(1);
    if lower.sum() > limit {
        return Err(TransformError::LowerBoundTooLarge { sum: lower.sum(), limit });
    }
    let mut out = ColoredDigraph::new(g.n(), g.q() + 1);
    let mut origin = Vec::with_capacity(2 * g.m());
    for e in g.edges() {
        out.add_edge(e.tail, e.head, e.color, e.weight);
        origin.push(e.original_index);
    }
    for e in g.edges() {
        out.add_edge(e.tail, e.head, g.q() + 1, e.weight);
        origin.push(e.original_index);
    }
    let mut alpha = lower.as_slice().to_vec();
    alpha.push(limit - lower.sum());
    Ok(AtLeastTransform { graph: out, alpha: ColorConstraint::new(alpha), origin })
}

#[cfg(test)]
mod tests;
