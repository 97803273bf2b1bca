//! Single-source shortest paths: BFS for uniform weights, binary-heap Dijkstra
//! for nonnegative weights, Bellman-Ford otherwise.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{ColoredDigraph, VertexId, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SsspMode {
    #[default]
    Auto,
    Bfs,
    Dijkstra,
    BellmanFord,
}

impl fmt::Display for SsspMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SsspMode::Auto => "auto",
            SsspMode::Bfs => "bfs",
            SsspMode::Dijkstra => "dijkstra",
            SsspMode::BellmanFord => "bellman-ford",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsspError {
    #[error("source vertex {vertex} out of range (n = {n})")]
    SourceOutOfRange { vertex: VertexId, n: usize },
    #[error("negative-weight cycle reachable from the source: {cycle:?}")]
    NegativeCycleReachable { cycle: Vec<VertexId> },
    #[error("{mode} is not applicable: {reason}")]
    ModeNotApplicable { mode: SsspMode, reason: &'static str },
}

/// `dist[v]` is the shortest-path weight from `source`, `None` if unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: VertexId,
    pub dist: Vec<Option<Weight>>,
}

impl DistanceTable {
    pub fn get(&self, v: VertexId) -> Option<Weight> {
        self.dist[v]
    }

    pub fn is_reachable(&self, v: VertexId) -> bool {
        self.dist[v].is_some()
    }

    pub fn unreachable(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.dist.iter().enumerate().filter(|(_, d)| d.is_none()).map(|(v, _)| v)
    }

    /// Zero distance for every vertex; used when a DAG is treated as its own
    /// shortest paths graph.
    pub fn zeros(source: VertexId, n: usize) -> Self {
        Self { source, dist: vec![Some(0); n] }
    }
}

/// Which algorithm [`SsspMode::Auto`] resolves to for `g`.
pub fn resolve_mode(g: &ColoredDigraph) -> SsspMode {
    if g.m() == 0 {
        return SsspMode::Bfs;
    }
    match g.has_uniform_weights() {
        Some(w) if w >= 0 => SsspMode::Bfs,
        _ if g.edges().iter().all(|e| e.weight >= 0) => SsspMode::Dijkstra,
        _ => SsspMode::BellmanFord,
    }
}

pub fn sssp(g: &ColoredDigraph, s: VertexId, mode: SsspMode) -> Result<DistanceTable, SsspError> {
    if s >= g.n() {
        return Err(SsspError::SourceOutOfRange { vertex: s, n: g.n() });
    }
    let mode = if mode == SsspMode::Auto { resolve_mode(g) } else { mode };
    match mode {
        SsspMode::Bfs => bfs(g, s),
        SsspMode::Dijkstra => dijkstra(g, s),
        SsspMode::BellmanFord | SsspMode::Auto => bellman_ford(g, s),
    }
}

fn bfs(g: &ColoredDigraph, s: VertexId) -> Result<DistanceTable, SsspError> {
    let unit = match g.has_uniform_weights() {
        None => 0,
        Some(w) if w >= 0 => w,
        Some(_) => {
            return Err(SsspError::ModeNotApplicable {
                mode: SsspMode::Bfs,
                reason: "uniform weight is negative",
            })
        }
    };
    if g.edges().iter().any(|e| e.weight != unit) {
        return Err(SsspError::ModeNotApplicable { mode: SsspMode::Bfs, reason: "weights are not uniform" });
    }
    let adj = g.out_adjacency();
    let mut hops: Vec<Option<i64>> = vec![None; g.n()];
    hops[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let h = hops[u].unwrap_or_default();
        for &pos in &adj[u] {
            let v = g.edges()[pos].head;
            if hops[v].is_none() {
                hops[v] = Some(h + 1);
                queue.push_back(v);
            }
        }
    }
    let dist = hops.into_iter().map(|h| h.map(|h| h * unit)).collect();
    Ok(DistanceTable { source: s, dist })
}

fn dijkstra(g: &ColoredDigraph, s: VertexId) -> Result<DistanceTable, SsspError> {
    if g.edges().iter().any(|e| e.weight < 0) {
        return Err(SsspError::ModeNotApplicable { mode: SsspMode::Dijkstra, reason: "negative edge weight" });
    }
    let adj = g.out_adjacency();
    let mut dist: Vec<Option<Weight>> = vec![None; g.n()];
    let mut done = vec![false; g.n()];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(0);
    heap.push(Reverse((0 as Weight, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &pos in &adj[u] {
            let e = &g.edges()[pos];
            let nd = d.saturating_add(e.weight);
            if dist[e.head].is_none_or(|old| nd < old) {
                dist[e.head] = Some(nd);
                heap.push(Reverse((nd, e.head)));
            }
        }
    }
    Ok(DistanceTable { source: s, dist })
}

/// Round-based Bellman-Ford with early exit. A relaxation in round `n`
/// certifies a negative cycle reachable from `s`; the cycle is recovered from
/// the predecessor pointers.
pub fn bellman_ford(g: &ColoredDigraph, s: VertexId) -> Result<DistanceTable, SsspError> {
    if s >= g.n() {
        return Err(SsspError::SourceOutOfRange { vertex: s, n: g.n() });
    }
    let n = g.n();
    let mut dist: Vec<Option<Weight>> = vec![None; n];
    let mut pred: Vec<Option<VertexId>> = vec![None; n];
    dist[s] = Some(0);
    for round in 0..n {
        let mut last_relaxed = None;
        for e in g.edges() {
            let Some(du) = dist[e.tail] else { continue };
            let nd = du.saturating_add(e.weight);
            if dist[e.head].is_none_or(|old| nd < old) {
                dist[e.head] = Some(nd);
                pred[e.head] = Some(e.tail);
                last_relaxed = Some(e.head);
            }
        }
        match last_relaxed {
            None => break,
            Some(v) if round + 1 == n => {
                return Err(SsspError::NegativeCycleReachable { cycle: cycle_through_preds(&pred, v, n) });
            }
            Some(_) => {}
        }
    }
    Ok(DistanceTable { source: s, dist })
}

fn cycle_through_preds(pred: &[Option<VertexId>], start: VertexId, n: usize) -> Vec<VertexId> {
    // n steps back along predecessors land inside the cycle.
    let mut v = start;
    for _ in 0..n {
        v = pred[v].unwrap_or(v);
    }
    let anchor = v;
    let mut cycle = vec![anchor];
    let mut u = pred[anchor].unwrap_or(anchor);
    while u != anchor {
        cycle.push(u);
        u = pred[u].unwrap_or(anchor);
    }
    cycle.reverse();
    cycle
}
