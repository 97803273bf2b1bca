//! The shortest paths graph: the subgraph of edges `(u,v)` with
//! `dist(v) = dist(u) + w(u,v)`. When every cycle of the input has positive
//! weight this subgraph is acyclic, and its arborescences rooted at the
//! source are exactly the shortest path trees of the input.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{ColoredDigraph, EdgeId, EdgeRecord, VertexId, Weight};
use crate::sssp::DistanceTable;

/// A directed cycle given both as vertices and as the edges joining them:
/// `edges[i]` runs from `vertices[i]` to `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl CycleWitness {
    /// Total weight of the witness edges looked up in `g`.
    pub fn weight_in(&self, g: &ColoredDigraph) -> Option<Weight> {
        self.edges.iter().map(|&id| g.edge(id).map(|e| e.weight)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acyclicity {
    Acyclic { order: Vec<VertexId> },
    Cyclic { cycle: CycleWitness },
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpgError {
    #[error("root {root} out of range (n = {n})")]
    RootOutOfRange { root: VertexId, n: usize },
    #[error("distance table is rooted at {table} but the requested source is {requested}")]
    SourceMismatch { requested: VertexId, table: VertexId },
    #[error("vertex {vertex} is not reachable from the source")]
    UnreachableVertex { vertex: VertexId },
    #[error("zero-weight cycle on shortest paths through vertices {:?}", cycle.vertices)]
    NonPositiveCycle { cycle: CycleWitness },
    #[error("input is not acyclic; cycle through vertices {:?}", cycle.vertices)]
    NotAcyclic { cycle: CycleWitness },
}

/// An acyclic subgraph with a designated root, as consumed by every
/// arborescence solver. Edges keep the `original_index` of the graph they were
/// taken from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpgGraph {
    base: ColoredDigraph,
    root: VertexId,
    distances: DistanceTable,
    topo_order: Vec<VertexId>,
}

impl SpgGraph {
    /// Treats an acyclic graph as its own shortest paths graph (every distance
    /// zero, every edge kept).
    pub fn from_dag(g: &ColoredDigraph, root: VertexId) -> Result<Self, SpgError> {
        if root >= g.n() {
            return Err(SpgError::RootOutOfRange { root, n: g.n() });
        }
        match topological_order(g, root) {
            Acyclicity::Acyclic { order } => Ok(Self {
                base: g.clone(),
                root,
                distances: DistanceTable::zeros(root, g.n()),
                topo_order: order,
            }),
            Acyclicity::Cyclic { cycle } => Err(SpgError::NotAcyclic { cycle }),
        }
    }

    pub fn base(&self) -> &ColoredDigraph {
        &self.base
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.distances
    }

    pub fn topo_order(&self) -> &[VertexId] {
        &self.topo_order
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn q(&self) -> usize {
        self.base.q()
    }
}

/// Keeps exactly the tight edges of `g` with respect to `d` and certifies that
/// they form a DAG.
pub fn build_spg(g: &ColoredDigraph, s: VertexId, d: &DistanceTable) -> Result<SpgGraph, SpgError> {
    if s >= g.n() {
        return Err(SpgError::RootOutOfRange { root: s, n: g.n() });
    }
    if d.source != s {
        return Err(SpgError::SourceMismatch { requested: s, table: d.source });
    }
    if let Some(vertex) = d.unreachable().next() {
        return Err(SpgError::UnreachableVertex { vertex });
    }
    let tight: Vec<EdgeRecord> = g
        .edges()
        .iter()
        .filter(|e| match (d.get(e.tail), d.get(e.head)) {
            (Some(du), Some(dv)) => du.checked_add(e.weight) == Some(dv),
            _ => false,
        })
        .copied()
        .collect();
    let base = ColoredDigraph::from_records(g.n(), g.q(), tight);
    match topological_order(&base, s) {
        Acyclicity::Acyclic { order } => Ok(SpgGraph { base, root: s, distances: d.clone(), topo_order: order }),
        Acyclicity::Cyclic { cycle } => Err(SpgError::NonPositiveCycle { cycle }),
    }
}

pub fn is_acyclic(g: &ColoredDigraph) -> Acyclicity {
    topological_order(g, 0)
}

/// Kahn's algorithm, seeding `first` ahead of the other sources when it has
/// no in-edges. On failure a cycle is recovered by walking backwards along
/// in-edges among the unprocessed vertices.
fn topological_order(g: &ColoredDigraph, first: VertexId) -> Acyclicity {
    let n = g.n();
    let adj = g.out_adjacency();
    let mut indeg = g.in_degrees();
    let mut queue = VecDeque::with_capacity(n);
    if first < n && indeg[first] == 0 {
        queue.push_back(first);
    }
    queue.extend((0..n).filter(|&v| v != first && indeg[v] == 0));
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &pos in &adj[u] {
            let v = g.edges()[pos].head;
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if order.len() == n {
        return Acyclicity::Acyclic { order };
    }

    // Every unprocessed vertex still has an in-edge from another unprocessed vertex.
    let mut stuck_pred: Vec<Option<&EdgeRecord>> = vec![None; n];
    for e in g.edges() {
        if indeg[e.head] > 0 && indeg[e.tail] > 0 && stuck_pred[e.head].is_none() {
            stuck_pred[e.head] = Some(e);
        }
    }
    let start = (0..n).find(|&v| indeg[v] > 0).unwrap_or_default();
    let mut pos_in_walk = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while pos_in_walk[v] == usize::MAX {
        pos_in_walk[v] = walk.len();
        let e = stuck_pred[v].expect("unprocessed vertex without unprocessed predecessor");
        walk.push(e);
        v = e.tail;
    }
    let mut cycle_edges: Vec<&EdgeRecord> = walk[pos_in_walk[v]..].to_vec();
    cycle_edges.reverse();
    Acyclicity::Cyclic {
        cycle: CycleWitness {
            vertices: cycle_edges.iter().map(|e| e.tail).collect(),
            edges: cycle_edges.iter().map(|e| e.original_index).collect(),
        },
    }
}
