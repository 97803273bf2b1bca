//! Flow and matching engines, and the auxiliary network that encodes an
//! arborescence problem on a shortest paths graph.
//!
//! The arborescence network has a source `s*`, one node per color, one node
//! per non-root vertex and a sink `t*`. Arc `(s*, i)` carries the budget of
//! color `i`, arc `(i, v)` exists with capacity 1 when some color-`i` edge
//! enters `v`, and arc `(v, t*)` has capacity 1. An integral flow of value
//! `n - 1` picks one color per vertex within budget.

mod dinitz;
mod hopcroft_karp;
mod min_cost;

pub use dinitz::{dinitz_max_flow, min_cut};
pub use hopcroft_karp::{hopcroft_karp, BipartiteGraph, Matching};
pub use min_cost::min_cost_max_flow;

use crate::graph::{Color, ColorConstraint, EdgeId, InDegreeByColor, VertexId, Weight};
use crate::spg::SpgGraph;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: NodeId,
    pub to: NodeId,
    pub capacity: i64,
    pub cost: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    node_count: usize,
    source: NodeId,
    sink: NodeId,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: NodeId, sink: NodeId) -> Self {
        Self { node_count, source, sink, arcs: Vec::new() }
    }

    pub fn add_arc(&mut self, from: NodeId, to: NodeId, capacity: i64, cost: i64) -> ArcId {
        debug_assert!(from < self.node_count && to < self.node_count && capacity >= 0);
        self.arcs.push(Arc { from, to, capacity, cost });
        self.arcs.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn has_costs(&self) -> bool {
        self.arcs.iter().any(|a| a.cost != 0)
    }
}

/// Operation counts of a flow computation. For Dinitz, `phases` counts
/// blocking-flow phases; for min-cost flow it counts shortest-path rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FlowStats {
    pub phases: usize,
    pub advances: usize,
    pub retreats: usize,
    pub augments: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    /// Flow on each arc, indexed like [`FlowNetwork::arcs`].
    pub flow: Vec<i64>,
    pub value: i64,
    pub total_cost: i64,
    pub stats: FlowStats,
}

impl FlowAssignment {
    pub fn phases_executed(&self) -> usize {
        self.stats.phases
    }

    /// Checks capacity bounds, integrality and conservation; returns the first
    /// violation as text.
    pub fn check_feasible(&self, h: &FlowNetwork) -> Result<(), String> {
        let mut excess = vec![0i64; h.node_count()];
        for (id, (arc, &f)) in h.arcs().iter().zip(&self.flow).enumerate() {
            if f < 0 || f > arc.capacity {
                return Err(format!("arc {id} carries {f} outside [0, {}]", arc.capacity));
            }
            excess[arc.from] -= f;
            excess[arc.to] += f;
        }
        for (v, &ex) in excess.iter().enumerate() {
            if v != h.source() && v != h.sink() && ex != 0 {
                return Err(format!("node {v} has excess {ex}"));
            }
        }
        if excess[h.sink()] != self.value {
            return Err(format!("sink receives {} but value is {}", excess[h.sink()], self.value));
        }
        Ok(())
    }
}

/// Where a color-to-vertex arc came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorVertexArc {
    pub arc: ArcId,
    pub color: Color,
    pub vertex: VertexId,
}

/// The auxiliary network together with its node layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArbNetwork {
    pub network: FlowNetwork,
    pub q: usize,
    pub root: VertexId,
    pub color_vertex_arcs: Vec<ColorVertexArc>,
}

impl ArbNetwork {
    pub const SOURCE: NodeId = 0;
    pub const SINK: NodeId = 1;

    pub fn color_node(&self, color: Color) -> NodeId {
        1 + color
    }

    /// Node of a non-root vertex.
    pub fn vertex_node(&self, v: VertexId) -> NodeId {
        debug_assert_ne!(v, self.root);
        let offset = if v < self.root { v } else { v - 1 };
        2 + self.q + offset
    }

    /// For every non-root vertex, the colors whose arc into it carries flow.
    pub fn colors_used(&self, f: &FlowAssignment) -> Vec<(VertexId, Color)> {
        self.color_vertex_arcs
            .iter()
            .filter(|cv| f.flow[cv.arc] > 0)
            .map(|cv| (cv.vertex, cv.color))
            .collect()
    }
}

fn arb_network_skeleton(n: usize, q: usize, root: VertexId, alpha: &ColorConstraint) -> ArbNetwork {
    let network = FlowNetwork::new(n + q + 1, ArbNetwork::SOURCE, ArbNetwork::SINK);
    let mut h = ArbNetwork { network, q, root, color_vertex_arcs: Vec::new() };
    for color in 1..=q {
        let to = h.color_node(color);
        h.network.add_arc(ArbNetwork::SOURCE, to, alpha.get(color) as i64, 0);
    }
    h
}

fn finish_arb_network(h: &mut ArbNetwork, n: usize) {
    for v in (0..n).filter(|&v| v != h.root) {
        let from = h.vertex_node(v);
        h.network.add_arc(from, ArbNetwork::SINK, 1, 0);
    }
}

/// Builds the auxiliary network for `g_s` and budget `alpha` from the
/// per-color in-degree table. All costs are zero.
pub fn build_arb_network(g_s: &SpgGraph, alpha: &ColorConstraint, pi: &InDegreeByColor) -> ArbNetwork {
    let (n, q, root) = (g_s.n(), g_s.q(), g_s.root());
    let mut h = arb_network_skeleton(n, q, root, alpha);
    for color in 1..=q {
        for v in (0..n).filter(|&v| v != root && pi.get(v, color) > 0) {
            let (from, to) = (h.color_node(color), h.vertex_node(v));
            let arc = h.network.add_arc(from, to, 1, 0);
            h.color_vertex_arcs.push(ColorVertexArc { arc, color, vertex: v });
        }
    }
    finish_arb_network(&mut h, n);
    h
}

/// Per `(vertex, color)`: the lightest edge of that color entering the vertex
/// (smallest `original_index` among equal weights) and the first such edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InEdgeTable {
    q: usize,
    lightest: Vec<Option<(Weight, EdgeId)>>,
    first: Vec<Option<EdgeId>>,
}

impl InEdgeTable {
    pub fn new(g_s: &SpgGraph) -> Self {
        let g = g_s.base();
        let q = g.q();
        let mut lightest: Vec<Option<(Weight, EdgeId)>> = vec![None; g.n() * q];
        let mut first = vec![None; g.n() * q];
        for e in g.edges() {
            let slot = e.head * q + (e.color - 1);
            if lightest[slot].is_none_or(|(w, _)| e.weight < w) {
                lightest[slot] = Some((e.weight, e.original_index));
            }
            first[slot].get_or_insert(e.original_index);
        }
        Self { q, lightest, first }
    }

    pub fn lightest(&self, v: VertexId, color: Color) -> Option<(Weight, EdgeId)> {
        self.lightest[v * self.q + (color - 1)]
    }

    pub fn first(&self, v: VertexId, color: Color) -> Option<EdgeId> {
        self.first[v * self.q + (color - 1)]
    }
}

/// Like [`build_arb_network`], with arc `(i, v)` costing the minimum weight of
/// a color-`i` edge entering `v`.
pub fn build_min_arb_network(g_s: &SpgGraph, alpha: &ColorConstraint, table: &InEdgeTable) -> ArbNetwork {
    let (n, q, root) = (g_s.n(), g_s.q(), g_s.root());
    let mut h = arb_network_skeleton(n, q, root, alpha);
    for color in 1..=q {
        for v in (0..n).filter(|&v| v != root) {
            if let Some((w, _)) = table.lightest(v, color) {
                let (from, to) = (h.color_node(color), h.vertex_node(v));
                let arc = h.network.add_arc(from, to, 1, w);
                h.color_vertex_arcs.push(ColorVertexArc { arc, color, vertex: v });
            }
        }
    }
    finish_arb_network(&mut h, n);
    h
}
