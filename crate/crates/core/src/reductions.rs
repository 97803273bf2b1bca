//! Constrained shortest `s`-`t` paths: reductions between the vertex-colored
//! and edge-colored versions, and an exact decider for the edge-colored one.
//!
//! A path is an edge-id sequence. In the vertex-colored version colors are
//! counted over every vertex of the path, both endpoints included.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Color, ColorConstraint, ColoredDigraph, EdgeId, ValidationError, VertexId, Weight};
use crate::sssp::{bellman_ford, SsspError};

/// A digraph whose vertices, rather than edges, carry colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoredDigraph {
    pub n: usize,
    pub q: usize,
    pub vertex_color: Vec<Color>,
    /// `(tail, head, weight)`; the position is the edge id.
    pub edges: Vec<(VertexId, VertexId, Weight)>,
}

impl VertexColoredDigraph {
    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.vertex_color.len() != self.n {
            return Err(ReductionError::ColorTableLength { expected: self.n, got: self.vertex_color.len() });
        }
        if let Some((vertex, &color)) = self.vertex_color.iter().enumerate().find(|(_, &c)| c == 0 || c > self.q) {
            return Err(ReductionError::BadVertexColor { vertex, color, q: self.q });
        }
        for (edge, &(u, v, _)) in self.edges.iter().enumerate() {
            if let Some(&vertex) = [u, v].iter().find(|&&x| x >= self.n) {
                return Err(ValidationError::BadVertexId { edge, vertex, n: self.n }.into());
            }
            if u == v {
                return Err(ValidationError::SelfLoop { edge, vertex: u }.into());
            }
        }
        Ok(())
    }

    pub fn path_weight(&self, path: &[EdgeId]) -> Weight {
        path.iter().map(|&i| self.edges[i].2).sum()
    }

    /// Per-color vertex counts along the path starting at `s`.
    pub fn path_color_counts(&self, s: VertexId, path: &[EdgeId]) -> Vec<usize> {
        let mut counts = vec![0; self.q];
        counts[self.vertex_color[s] - 1] += 1;
        for &i in path {
            counts[self.vertex_color[self.edges[i].1] - 1] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcSpInstance {
    pub graph: ColoredDigraph,
    pub s: VertexId,
    pub t: VertexId,
    pub alpha: ColorConstraint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VccSpInstance {
    pub graph: VertexColoredDigraph,
    pub s: VertexId,
    pub t: VertexId,
    pub alpha: ColorConstraint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionDirection {
    VccToCc,
    CcToVcc,
}

/// What an element of the produced instance stands for in the input instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Vertex(VertexId),
    Edge(EdgeId),
    /// Added by the construction.
    New,
}

/// Correspondence between an input instance and the instance a reduction
/// produced, sufficient to map paths in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub direction: ReductionDirection,
    /// For each vertex of the produced instance.
    pub vertex_map: Vec<Origin>,
    /// For each edge of the produced instance.
    pub edge_map: Vec<Origin>,
    /// Produced path weight divided by input path weight.
    pub weight_scale: Weight,
    /// Produced edge id by (tail, head) in the produced instance.
    arc_index: HashMap<(VertexId, VertexId), EdgeId>,
    /// The edge leaving the produced source (vcc → cc only).
    source_edge: Option<EdgeId>,
}

impl ReductionCertificate {
    /// Image of an input `s`-`t` path in the produced instance.
    pub fn push_forward(&self, path: &[EdgeId]) -> Vec<EdgeId> {
        match self.direction {
            ReductionDirection::VccToCc => {
                // Edge ids are shared; prepend the new (s', s) edge.
                self.source_edge.into_iter().chain(path.iter().copied()).collect()
            }
            ReductionDirection::CcToVcc => {
                let node_of = |e: EdgeId| {
                    self.vertex_map.iter().position(|&o| o == Origin::Edge(e)).expect("edge has a line-graph node")
                };
                let (s_new, t_new) = (self.vertex_map.len() - 2, self.vertex_map.len() - 1);
                let mut nodes = vec![s_new];
                nodes.extend(path.iter().map(|&e| node_of(e)));
                nodes.push(t_new);
                nodes.windows(2).map(|w| self.arc_index[&(w[0], w[1])]).collect()
            }
        }
    }

    /// Preimage of a produced `s'`-`t'` path.
    pub fn pull_back(&self, path: &[EdgeId], produced_edges: &[(VertexId, VertexId)]) -> Vec<EdgeId> {
        match self.direction {
            ReductionDirection::VccToCc => {
                path.iter().filter_map(|&e| if let Origin::Edge(j) = self.edge_map[e] { Some(j) } else { None }).collect()
            }
            ReductionDirection::CcToVcc => path
                .iter()
                .filter_map(|&e| match self.vertex_map[produced_edges[e].1] {
                    Origin::Edge(j) => Some(j),
                    _ => None,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("vertex color table has {got} entries for {expected} vertices")]
    ColorTableLength { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color} outside 1..={q}")]
    BadVertexColor { vertex: VertexId, color: Color, q: usize },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("vertex {vertex} out of range (n = {n})")]
    EndpointOutOfRange { vertex: VertexId, n: usize },
    #[error("the line-graph reduction needs distinct endpoints")]
    SourceEqualsTarget,
    #[error("the line-graph reduction needs at least one color")]
    NoColors,
}

/// Adds a new source `s'` with a weight-0 edge `(s', s)` and colors each edge
/// with the color of its head. Edge ids `0..m` are kept; the new edge is `m`.
pub fn vcc_to_cc(instance: &VccSpInstance) -> Result<(CcSpInstance, ReductionCertificate), ReductionError> {
    let g = &instance.graph;
    g.validate()?;
    for v in [instance.s, instance.t] {
        if v >= g.n {
            return Err(ReductionError::EndpointOutOfRange { vertex: v, n: g.n });
        }
    }
    let s_new = g.n;
    let mut out = ColoredDigraph::new(g.n + 1, g.q);
    let mut arc_index = HashMap::new();
    for &(u, v, w) in &g.edges {
        let id = out.add_edge(u, v, g.vertex_color[v], w);
        arc_index.entry((u, v)).or_insert(id);
    }
    let source_edge = out.add_edge(s_new, instance.s, g.vertex_color[instance.s], 0);
    arc_index.insert((s_new, instance.s), source_edge);

    let mut vertex_map: Vec<Origin> = (0..g.n).map(Origin::Vertex).collect();
    vertex_map.push(Origin::New);
    let mut edge_map: Vec<Origin> = (0..g.edges.len()).map(Origin::Edge).collect();
    edge_map.push(Origin::New);
    let cert = ReductionCertificate {
        direction: ReductionDirection::VccToCc,
        vertex_map,
        edge_map,
        weight_scale: 1,
        arc_index,
        source_edge: Some(source_edge),
    };
    Ok((CcSpInstance { graph: out, s: s_new, t: instance.t, alpha: instance.alpha.clone() }, cert))
}

/// Directed line graph with a new source `s'` (vertex `m`) and sink `t'`
/// (vertex `m + 1`). Node `v_e` is vertex `e` and has color `χ(e)`; `s'` and
/// `t'` get color 1, so the budget of color 1 grows by 2. Arc weights are
/// `w(e)` out of `s'`, `w(e) + w(f)` between line nodes and `w(e)` into `t'`,
/// which doubles every path weight.
pub fn cc_to_vcc(instance: &CcSpInstance) -> Result<(VccSpInstance, ReductionCertificate), ReductionError> {
    let g = &instance.graph;
    g.validate()?;
    for v in [instance.s, instance.t] {
        if v >= g.n() {
            return Err(ReductionError::EndpointOutOfRange { vertex: v, n: g.n() });
        }
    }
    if instance.s == instance.t {
        return Err(ReductionError::SourceEqualsTarget);
    }
    if g.q() == 0 {
        return Err(ReductionError::NoColors);
    }
    let m = g.m();
    let (s_new, t_new) = (m, m + 1);
    let node: HashMap<EdgeId, VertexId> = g.edges().iter().enumerate().map(|(i, e)| (e.original_index, i)).collect();
    let mut vertex_color: Vec<Color> = g.edges().iter().map(|e| e.color).collect();
    vertex_color.extend([1, 1]);

    let mut edges = Vec::new();
    let mut arc_index = HashMap::new();
    let mut push = |u: VertexId, v: VertexId, w: Weight, edges: &mut Vec<(VertexId, VertexId, Weight)>| {
        arc_index.insert((u, v), edges.len());
        edges.push((u, v, w));
    };
    let out_adj = g.out_adjacency();
    for e in g.edges().iter().filter(|e| e.tail == instance.s) {
        push(s_new, node[&e.original_index], e.weight, &mut edges);
    }
    for e in g.edges() {
        for &pos in &out_adj[e.head] {
            let f = &g.edges()[pos];
            push(node[&e.original_index], pos, e.weight + f.weight, &mut edges);
        }
    }
    for e in g.edges().iter().filter(|e| e.head == instance.t) {
        push(node[&e.original_index], t_new, e.weight, &mut edges);
    }

    let mut vertex_map: Vec<Origin> = g.edges().iter().map(|e| Origin::Edge(e.original_index)).collect();
    vertex_map.extend([Origin::New, Origin::New]);
    let edge_map = vec![Origin::New; edges.len()];
    let mut alpha = instance.alpha.as_slice().to_vec();
    alpha[0] += 2;
    let out = VertexColoredDigraph { n: m + 2, q: g.q(), vertex_color, edges };
    let cert = ReductionCertificate {
        direction: ReductionDirection::CcToVcc,
        vertex_map,
        edge_map,
        weight_scale: 2,
        arc_index,
        source_edge: None,
    };
    Ok((VccSpInstance { graph: out, s: s_new, t: t_new, alpha: ColorConstraint::new(alpha) }, cert))
}

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcSpError {
    #[error(transparent)]
    Sssp(#[from] SsspError),
    #[error("endpoint {vertex} out of range (n = {n})")]
    EndpointOutOfRange { vertex: VertexId, n: usize },
    #[error("{states} budget states per vertex exceed the cap {cap}")]
    BudgetStateOverflow { states: u128, cap: usize },
    #[error(transparent)]
    Constraint(#[from] crate::graph::ConstraintError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CcSpAnswer {
    /// A shortest `s`-`t` path within budget.
    Yes { path: Vec<EdgeId>, weight: Weight },
    No,
}

impl CcSpAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, CcSpAnswer::Yes { .. })
    }
}

pub fn cc_sp_decide(instance: &CcSpInstance) -> Result<CcSpAnswer, CcSpError> {
    cc_sp_decide_capped(instance, DEFAULT_STATE_CAP)
}

/// Decides whether some shortest `s`-`t` path uses at most `α_i` edges of
/// every color `i`.
///
/// States are `(vertex, per-color count vector)` with counts capped at
/// `min(α_i, n − 1)` and packed in mixed radix. Every edge raises one count,
/// so ascending codes form a topological order of the state graph and a
/// single sweep yields the lightest within-budget walk to every state. With
/// no negative cycle, cutting a cycle out of such a walk keeps it within
/// budget and no heavier, so the lightest within-budget walk to `t` weighs
/// `δ(s,t)` exactly when a within-budget shortest path exists.
pub fn cc_sp_decide_capped(instance: &CcSpInstance, state_cap: usize) -> Result<CcSpAnswer, CcSpError> {
    let g = &instance.graph;
    let (s, t) = (instance.s, instance.t);
    for v in [s, t] {
        if v >= g.n() {
            return Err(CcSpError::EndpointOutOfRange { vertex: v, n: g.n() });
        }
    }
    instance.alpha.check_len(g.q())?;
    let dist = bellman_ford(g, s)?;
    let Some(shortest) = dist.get(t) else { return Ok(CcSpAnswer::No) };

    let caps: Vec<usize> = instance.alpha.as_slice().iter().map(|&a| a.min(g.n() - 1)).collect();
    let mut radix = Vec::with_capacity(caps.len());
    let mut states: u128 = 1;
    for &c in &caps {
        radix.push(states as usize);
        states *= c as u128 + 1;
        if states > state_cap as u128 {
            return Err(CcSpError::BudgetStateOverflow { states, cap: state_cap });
        }
    }
    let states = states as usize;
    let n = g.n();
    let idx = |code: usize, v: VertexId| code * n + v;
    let mut best: Vec<Option<Weight>> = vec![None; states * n];
    let mut pred: Vec<Option<(usize, EdgeId)>> = vec![None; states * n];
    best[idx(0, s)] = Some(0);
    let out_adj = g.out_adjacency();
    for code in 0..states {
        for u in 0..n {
            let Some(wu) = best[idx(code, u)] else { continue };
            for &pos in &out_adj[u] {
                let e = &g.edges()[pos];
                let c = e.color - 1;
                let count = code / radix[c] % (caps[c] + 1);
                if count == caps[c] {
                    continue;
                }
                let next = code + radix[c];
                let cand = wu + e.weight;
                let slot = idx(next, e.head);
                if best[slot].is_none_or(|w| cand < w) {
                    best[slot] = Some(cand);
                    pred[slot] = Some((idx(code, u), e.original_index));
                }
            }
        }
    }
    let Some(end) = (0..states).map(|code| idx(code, t)).filter(|&i| best[i] == Some(shortest)).min() else {
        return Ok(CcSpAnswer::No);
    };
    let mut walk = Vec::new();
    let mut cur = end;
    while let Some((prev, edge)) = pred[cur] {
        walk.push(edge);
        cur = prev;
    }
    walk.reverse();
    let path = remove_cycles(g, s, &walk);
    let weight = path.iter().map(|&id| g.edge(id).unwrap().weight).sum();
    debug_assert_eq!(weight, shortest);
    Ok(CcSpAnswer::Yes { path, weight })
}

/// Shortcuts every repeated vertex of a walk starting at `s`.
fn remove_cycles(g: &ColoredDigraph, s: VertexId, walk: &[EdgeId]) -> Vec<EdgeId> {
    let mut position: HashMap<VertexId, usize> = HashMap::from([(s, 0)]);
    let mut vertices = vec![s];
    let mut path: Vec<EdgeId> = Vec::new();
    for &id in walk {
        let head = g.edge(id).unwrap().head;
        if let Some(&at) = position.get(&head) {
            for v in vertices.drain(at + 1..) {
                position.remove(&v);
            }
            path.truncate(at);
        } else {
            path.push(id);
            position.insert(head, vertices.len());
            vertices.push(head);
        }
    }
    path
}
