//! Edge-colored, integer-weighted digraphs and per-color in-degree tables.
//!
//! Vertices are dense ids `0..n`, colors are `1..=q`. Every edge remembers the
//! ordinal it had in the graph it was first added to (`original_index`), so
//! subgraphs such as the shortest paths graph can refer back to edges of the
//! input without a translation table. Edges are always stored in increasing
//! `original_index` order; "pick an arbitrary edge" everywhere in this crate
//! means "pick the one with the smallest `original_index`".

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type VertexId = usize;
pub type Color = usize;
pub type EdgeId = usize;
pub type Weight = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRecord {
    pub tail: VertexId,
    pub head: VertexId,
    pub color: Color,
    pub weight: Weight,
    pub original_index: EdgeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("edge {edge}: vertex {vertex} out of range (n = {n})")]
    BadVertexId { edge: EdgeId, vertex: VertexId, n: usize },
    #[error("edge {edge}: color {color} out of range 1..={q}")]
    BadColorId { edge: EdgeId, color: Color, q: usize },
    #[error("edge {edge}: self-loop at vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColoredDigraph {
    n: usize,
    q: usize,
    edges: Vec<EdgeRecord>,
}

impl ColoredDigraph {
    pub fn new(n: usize, q: usize) -> Self {
        Self { n, q, edges: Vec::new() }
    }

    /// Builds a graph from `(tail, head, color, weight)` tuples and validates it.
    pub fn from_edges<I>(n: usize, q: usize, edges: I) -> Result<Self, ValidationError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Color, Weight)>,
    {
        let mut g = Self::new(n, q);
        for (tail, head, color, weight) in edges {
            g.add_edge(tail, head, color, weight);
        }
        g.validate()?;
        Ok(g)
    }

    /// Subgraph constructor; `edges` must be sorted by strictly increasing
    /// `original_index`.
    pub(crate) fn from_records(n: usize, q: usize, edges: Vec<EdgeRecord>) -> Self {
        debug_assert!(edges
            .windows(2)
            .all(|w| w[0].original_index < w[1].original_index));
        Self { n, q, edges }
    }

    /// Appends an edge without validating it. Returns its `original_index`.
    pub fn add_edge(&mut self, tail: VertexId, head: VertexId, color: Color, weight: Weight) -> EdgeId {
        let original_index = self.edges.last().map_or(0, |e| e.original_index + 1);
        self.edges.push(EdgeRecord { tail, head, color, weight, original_index });
        original_index
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    /// Looks an edge up by its `original_index`.
    pub fn edge(&self, id: EdgeId) -> Option<&EdgeRecord> {
        self.edges
            .binary_search_by_key(&id, |e| e.original_index)
            .ok()
            .map(|pos| &self.edges[pos])
    }

    /// Checks every structural invariant, reporting the first offending edge.
    pub fn validate(&self) -> Result<(), ValidationError> {
        for e in &self.edges {
            for v in [e.tail, e.head] {
                if v >= self.n {
                    return Err(ValidationError::BadVertexId { edge: e.original_index, vertex: v, n: self.n });
                }
            }
            if e.color == 0 || e.color > self.q {
                return Err(ValidationError::BadColorId { edge: e.original_index, color: e.color, q: self.q });
            }
            if e.tail == e.head {
                return Err(ValidationError::SelfLoop { edge: e.original_index, vertex: e.tail });
            }
        }
        Ok(())
    }

    /// Counts, in one pass, the edges of every color entering every vertex.
    pub fn in_degree_by_color(&self) -> InDegreeByColor {
        let mut counts = vec![0usize; self.n * self.q];
        for e in &self.edges {
            counts[e.head * self.q + (e.color - 1)] += 1;
        }
        InDegreeByColor { q: self.q, counts }
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.head] += 1;
        }
        deg
    }

    /// Positions (into [`edges`](Self::edges)) of the edges leaving each vertex.
    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (pos, e) in self.edges.iter().enumerate() {
            adj[e.tail].push(pos);
        }
        adj
    }

    /// Positions (into [`edges`](Self::edges)) of the edges entering each vertex.
    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (pos, e) in self.edges.iter().enumerate() {
            adj[e.head].push(pos);
        }
        adj
    }

    pub fn has_uniform_weights(&self) -> Option<Weight> {
        let first = self.edges.first()?.weight;
        self.edges.iter().all(|e| e.weight == first).then_some(first)
    }

    /// Induced subgraph on `vertices`, renumbered densely in ascending order of
    /// the old ids. Edges keep their `original_index`.
    pub fn restrict_to(&self, vertices: &[VertexId]) -> (ColoredDigraph, Renumbering) {
        let mut old_to_new = vec![None; self.n];
        let mut keep: Vec<VertexId> = vertices.iter().copied().filter(|&v| v < self.n).collect();
        keep.sort_unstable();
        keep.dedup();
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let tail = old_to_new[e.tail]?;
                let head = old_to_new[e.head]?;
                Some(EdgeRecord { tail, head, ..*e })
            })
            .collect();
        let g = ColoredDigraph::from_records(keep.len(), self.q, edges);
        (g, Renumbering { old_to_new, new_to_old: keep })
    }

    /// Vertices reachable from `s` by a directed path (including `s`).
    pub fn reachable_from(&self, s: VertexId) -> Vec<bool> {
        let adj = self.out_adjacency();
        let mut seen = vec![false; self.n];
        if s >= self.n {
            return seen;
        }
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &pos in &adj[u] {
                let v = self.edges[pos].head;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Vertex id translation produced by [`ColoredDigraph::restrict_to`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Renumbering {
    pub old_to_new: Vec<Option<VertexId>>,
    pub new_to_old: Vec<VertexId>,
}

/// `counts[v * q + (i - 1)]` is the number of color-`i` edges entering `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InDegreeByColor {
    q: usize,
    counts: Vec<usize>,
}

impl InDegreeByColor {
    pub fn get(&self, v: VertexId, color: Color) -> usize {
        self.counts[v * self.q + (color - 1)]
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Colors with at least one edge entering `v`, ascending.
    pub fn colors_into(&self, v: VertexId) -> impl Iterator<Item = Color> + '_ {
        (1..=self.q).filter(move |&i| self.get(v, i) > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("color constraint has {got} entries but the graph has {expected} colors")]
    WrongLength { expected: usize, got: usize },
    #[error("invalid color constraint `{0}`")]
    Parse(String),
}

/// Per-color upper bounds on the number of edges of each color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ColorConstraint(Vec<usize>);

impl ColorConstraint {
    pub fn new(alpha: Vec<usize>) -> Self {
        Self(alpha)
    }

    /// A constraint that never binds: every entry is `n - 1`.
    pub fn vacuous(q: usize, n: usize) -> Self {
        Self(vec![n.saturating_sub(1); q])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bound for `color` (1-based).
    pub fn get(&self, color: Color) -> usize {
        self.0[color - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn check_len(&self, q: usize) -> Result<(), ConstraintError> {
        if self.0.len() == q {
            Ok(())
        } else {
            Err(ConstraintError::WrongLength { expected: q, got: self.0.len() })
        }
    }

    /// Caps every entry at `cap`.
    pub fn clamped(&self, cap: usize) -> Self {
        Self(self.0.iter().map(|&a| a.min(cap)).collect())
    }

    /// True when `counts[i - 1] <= alpha_i` for every color.
    pub fn admits(&self, counts: &[usize]) -> bool {
        counts.len() == self.0.len() && counts.iter().zip(&self.0).all(|(c, a)| c <= a)
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for ColorConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for ColorConstraint {
    type Err = ConstraintError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        s.split(',')
            .map(|tok| tok.trim().parse::<usize>().map_err(|_| ConstraintError::Parse(s.to_owned())))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const S: VertexId = 0;
    pub const A: VertexId = 1;
    pub const B: VertexId = 2;
    pub const T: VertexId = 3;

    /// Diamond s->a, s->b, a->t, b->t; (s,a),(a,t) color 1, (s,b),(b,t) color 2, unit weights.
    pub fn diamond() -> ColoredDigraph {
        ColoredDigraph::from_edges(4, 2, [(S, A, 1, 1), (S, B, 2, 1), (A, T, 1, 1), (B, T, 2, 1)]).unwrap()
    }

    /// The diamond with `(b,t)` weighing 5.
    pub fn weighted_diamond() -> ColoredDigraph {
        ColoredDigraph::from_edges(4, 2, [(S, A, 1, 1), (S, B, 2, 1), (A, T, 1, 1), (B, T, 2, 5)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_graph_is_valid() {
        let g = ColoredDigraph::from_edges(2, 1, [(0, 1, 1, 0)]);
        assert!(g.is_ok());
    }

    #[test]
    fn self_loop_is_rejected() {
        let err = ColoredDigraph::from_edges(1, 1, [(0, 0, 1, 0)]).unwrap_err();
        assert_eq!(err, ValidationError::SelfLoop { edge: 0, vertex: 0 });
    }

    #[test]
    fn color_out_of_range_is_rejected() {
        let err = ColoredDigraph::from_edges(2, 2, [(0, 1, 1, 0), (0, 1, 3, 0)]).unwrap_err();
        assert_eq!(err, ValidationError::BadColorId { edge: 1, color: 3, q: 2 });
        let err = ColoredDigraph::from_edges(2, 2, [(0, 1, 0, 0)]).unwrap_err();
        assert!(matches!(err, ValidationError::BadColorId { color: 0, .. }));
    }

    #[test]
    fn vertex_out_of_range_is_rejected() {
        let err = ColoredDigraph::from_edges(2, 1, [(0, 2, 1, 0)]).unwrap_err();
        assert_eq!(err, ValidationError::BadVertexId { edge: 0, vertex: 2, n: 2 });
    }

    #[test]
    fn parallel_edges_are_allowed() {
        assert!(ColoredDigraph::from_edges(2, 1, [(0, 1, 1, 3), (0, 1, 1, 3)]).is_ok());
    }

    #[test]
    fn in_degree_of_empty_graph_is_zero() {
        let g = ColoredDigraph::new(3, 2);
        let pi = g.in_degree_by_color();
        assert_eq!(pi.total(), 0);
        for v in 0..3 {
            for c in 1..=2 {
                assert_eq!(pi.get(v, c), 0);
            }
        }
    }

    #[test]
    fn in_degree_direct_count() {
        let g = ColoredDigraph::from_edges(3, 2, [(0, 1, 1, 0), (2, 1, 1, 0), (0, 2, 2, 0)]).unwrap();
        let pi = g.in_degree_by_color();
        assert_eq!(pi.get(1, 1), 2);
        assert_eq!(pi.get(2, 2), 1);
        assert_eq!(pi.total(), 3);
    }

    #[test]
    fn in_degree_of_diamond_matches_naive_count() {
        let g = diamond();
        let pi = g.in_degree_by_color();
        for v in 0..g.n() {
            for c in 1..=g.q() {
                let naive = g.edges().iter().filter(|e| e.head == v && e.color == c).count();
                assert_eq!(pi.get(v, c), naive);
            }
        }
        assert_eq!((pi.get(A, 1), pi.get(B, 2), pi.get(T, 1), pi.get(T, 2)), (1, 1, 1, 1));
        assert_eq!(pi.get(A, 2) + pi.get(B, 1) + pi.get(S, 1) + pi.get(S, 2), 0);
    }

    #[test]
    fn restrict_to_everything_is_identity() {
        let g = diamond();
        let (h, map) = g.restrict_to(&[0, 1, 2, 3]);
        assert_eq!(h, g);
        assert_eq!(map.new_to_old, vec![0, 1, 2, 3]);
    }

    #[test]
    fn restrict_to_nothing_is_empty() {
        let (h, map) = diamond().restrict_to(&[]);
        assert_eq!((h.n(), h.m()), (0, 0));
        assert!(map.new_to_old.is_empty());
    }

    #[test]
    fn restrict_diamond_drops_b() {
        let g = diamond();
        let keep = [S, A, T];
        let (h, map) = g.restrict_to(&keep);
        let expected: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| keep.contains(&e.tail) && keep.contains(&e.head))
            .map(|e| e.original_index)
            .collect();
        assert_eq!(h.m(), 2);
        assert_eq!(h.edges().iter().map(|e| e.original_index).collect::<Vec<_>>(), expected);
        assert_eq!(map.old_to_new[T], Some(2));
        assert_eq!(h.edge(2).map(|e| (e.tail, e.head)), Some((1, 2)));
    }

    #[test]
    fn alpha_parses_and_prints() {
        let a: ColorConstraint = "2, 1,0".parse().unwrap();
        assert_eq!(a.as_slice(), &[2, 1, 0]);
        assert_eq!(a.to_string(), "2,1,0");
        assert!("2,x".parse::<ColorConstraint>().is_err());
        assert!("".parse::<ColorConstraint>().unwrap().is_empty());
    }

    fn arb_graph() -> impl Strategy<Value = ColoredDigraph> {
        (1usize..12, 1usize..5).prop_flat_map(|(n, q)| {
            prop::collection::vec((0..n, 0..n, 1..=q, -5i64..10), 0..40).prop_map(move |raw| {
                let mut g = ColoredDigraph::new(n, q);
                for (u, v, c, w) in raw {
                    if u != v {
                        g.add_edge(u, v, c, w);
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn in_degree_totals_equal_edge_count(g in arb_graph()) {
            prop_assert_eq!(g.in_degree_by_color().total(), g.m());
        }

        #[test]
        fn validate_is_idempotent(g in arb_graph()) {
            let first = g.validate();
            prop_assert_eq!(first, g.validate());
            prop_assert!(first.is_ok());
        }

        #[test]
        fn restrict_then_full_restrict_is_identity(g in arb_graph(), mask in prop::collection::vec(any::<bool>(), 12)) {
            let keep: Vec<_> = (0..g.n()).filter(|&v| mask[v]).collect();
            let (h, _) = g.restrict_to(&keep);
            let all: Vec<_> = (0..h.n()).collect();
            let (h2, map) = h.restrict_to(&all);
            prop_assert_eq!(&h2, &h);
            prop_assert_eq!(map.new_to_old, all);
        }
    }
}
