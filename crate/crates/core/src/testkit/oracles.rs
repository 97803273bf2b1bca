//! Exhaustive reference solvers. They share nothing with the fast solvers
//! beyond the graph types and are written for obviousness, not speed.

use crate::arb::Arborescence;
use crate::graph::{ColorConstraint, ColoredDigraph, EdgeId, VertexId, Weight};
use crate::reductions::VertexColoredDigraph;
use crate::spg::SpgGraph;

use super::OracleError;

pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;
pub const MAX_BRUTE_FORCE_N: usize = 10;
/// Line graphs of small instances are larger but sparse, so the
/// vertex-colored path oracle allows more vertices.
pub const MAX_VCC_PATH_N: usize = 40;

fn check_size(n: usize) -> Result<(), OracleError> {
    check_size_against(n, MAX_BRUTE_FORCE_N)
}

fn check_size_against(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        return Err(OracleError::InstanceTooLarge { n, limit });
    }
    Ok(())
}

fn in_edge_lists(g: &ColoredDigraph) -> Vec<Vec<EdgeId>> {
    let mut lists = vec![Vec::new(); g.n()];
    for e in g.edges() {
        lists[e.head].push(e.original_index);
    }
    lists
}

fn color_counts(g: &ColoredDigraph, parent: &[Option<EdgeId>]) -> Vec<usize> {
    let mut counts = vec![0; g.q()];
    for id in parent.iter().flatten() {
        counts[g.edge(*id).unwrap().color - 1] += 1;
    }
    counts
}

fn within(counts: &[usize], alpha: &ColorConstraint) -> bool {
    counts.iter().zip(alpha.as_slice()).all(|(c, a)| c <= a)
}

/// Follows parent pointers from every vertex; the selection is a spanning
/// arborescence iff each walk reaches the root within `n` steps.
fn all_reach_root(g: &ColoredDigraph, root: VertexId, parent: &[Option<EdgeId>]) -> bool {
    (0..g.n()).all(|start| {
        let mut v = start;
        for _ in 0..=g.n() {
            if v == root {
                return true;
            }
            match parent[v] {
                Some(id) => v = g.edge(id).unwrap().tail,
                None => return false,
            }
        }
        false
    })
}

/// Every selection of one in-edge per non-root vertex, in lexicographic order
/// of the parent-edge vector. On a DAG each selection is an arborescence.
pub struct ArborescenceIter<'a> {
    g: &'a ColoredDigraph,
    root: VertexId,
    choices: Vec<Vec<EdgeId>>,
    odometer: Vec<usize>,
    done: bool,
}

impl Iterator for ArborescenceIter<'_> {
    type Item = Arborescence;

    fn next(&mut self) -> Option<Arborescence> {
        if self.done {
            return None;
        }
        let parent: Vec<Option<EdgeId>> = (0..self.g.n())
            .map(|v| if v == self.root { None } else { Some(self.choices[v][self.odometer[v]]) })
            .collect();
        // Advance, least significant digit last.
        self.done = true;
        for v in (0..self.g.n()).rev() {
            if v == self.root {
                continue;
            }
            self.odometer[v] += 1;
            if self.odometer[v] < self.choices[v].len() {
                self.done = false;
                break;
            }
            self.odometer[v] = 0;
        }
        Some(Arborescence::from_parent_edges(self.g, self.root, parent))
    }
}

pub fn enumerate_spg_arborescences(g_s: &SpgGraph) -> Result<ArborescenceIter<'_>, OracleError> {
    enumerate_spg_arborescences_capped(g_s, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_spg_arborescences_capped(g_s: &SpgGraph, cap: u128) -> Result<ArborescenceIter<'_>, OracleError> {
    let g = g_s.base();
    let root = g_s.root();
    let choices = in_edge_lists(g);
    let mut count: u128 = 1;
    let mut empty = false;
    for (v, list) in choices.iter().enumerate() {
        if v != root {
            count = count.saturating_mul(list.len() as u128);
            empty |= list.is_empty();
        }
    }
    if empty {
        count = 0;
    }
    if count > cap {
        return Err(OracleError::TooManyArborescences { count, cap });
    }
    Ok(ArborescenceIter { g, root, odometer: vec![0; g.n()], choices, done: empty })
}

/// Lexicographically least α-feasible arborescence of an SPG, if any.
pub fn brute_cc_arb(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<Option<Arborescence>, OracleError> {
    Ok(enumerate_spg_arborescences(g_s)?.find(|t| within(&t.color_counts, alpha)))
}

/// Minimum total weight over α-feasible arborescences of an SPG.
pub fn brute_min_cc_arb(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<Option<Weight>, OracleError> {
    Ok(enumerate_spg_arborescences(g_s)?.filter(|t| within(&t.color_counts, alpha)).map(|t| t.total_weight).min())
}

/// Whether some arborescence of an SPG uses at least `lower[i]` edges of
/// every color `i`.
pub fn brute_at_least_arb(g_s: &SpgGraph, lower: &ColorConstraint) -> Result<bool, OracleError> {
    Ok(enumerate_spg_arborescences(g_s)?
        .any(|t| t.color_counts.iter().zip(lower.as_slice()).all(|(c, l)| c >= l)))
}

/// α-colored arborescence of an arbitrary digraph by backtracking over
/// in-edge selections with cycle checks. Returns the lexicographically least
/// feasible parent-edge vector.
pub fn brute_cc_arb_general(
    g: &ColoredDigraph,
    s: VertexId,
    alpha: &ColorConstraint,
) -> Result<Option<Arborescence>, OracleError> {
    check_size(g.n())?;
    let choices = in_edge_lists(g);
    let mut parent = vec![None; g.n()];
    let mut counts = vec![0usize; g.q()];

    fn go(
        v: usize,
        g: &ColoredDigraph,
        s: VertexId,
        alpha: &ColorConstraint,
        choices: &[Vec<EdgeId>],
        parent: &mut Vec<Option<EdgeId>>,
        counts: &mut Vec<usize>,
    ) -> bool {
        if v == g.n() {
            return all_reach_root(g, s, parent);
        }
        if v == s {
            return go(v + 1, g, s, alpha, choices, parent, counts);
        }
        for &id in &choices[v] {
            let c = g.edge(id).unwrap().color - 1;
            if counts[c] + 1 > alpha.as_slice()[c] {
                continue;
            }
            counts[c] += 1;
            parent[v] = Some(id);
            if go(v + 1, g, s, alpha, choices, parent, counts) {
                return true;
            }
            parent[v] = None;
            counts[c] -= 1;
        }
        false
    }

    if alpha.len() != g.q() || s >= g.n() {
        return Ok(None);
    }
    let found = go(0, g, s, alpha, &choices, &mut parent, &mut counts);
    Ok(found.then(|| Arborescence::from_parent_edges(g, s, parent)))
}

/// Shortest distances by plain repeated relaxation; `None` if a negative
/// cycle is reachable.
pub fn naive_distances(g: &ColoredDigraph, s: VertexId) -> Option<Vec<Option<Weight>>> {
    let mut d: Vec<Option<Weight>> = vec![None; g.n()];
    d[s] = Some(0);
    for _ in 0..g.n() {
        for e in g.edges() {
            if let Some(du) = d[e.tail] {
                if d[e.head].is_none_or(|dv| du + e.weight < dv) {
                    d[e.head] = Some(du + e.weight);
                }
            }
        }
    }
    let still_relaxing = g.edges().iter().any(|e| matches!((d[e.tail], d[e.head]), (Some(du), Some(dv)) if du + e.weight < dv));
    (!still_relaxing).then_some(d)
}

/// Minimum weight over α-colored shortest path trees of `g` from `s`, found
/// by trying every selection of one tight in-edge per vertex. `Ok(None)` when
/// none exists (including when some vertex is unreachable or a negative cycle
/// is reachable).
pub fn brute_cc_spt(g: &ColoredDigraph, s: VertexId, alpha: &ColorConstraint) -> Result<Option<Weight>, OracleError> {
    check_size(g.n())?;
    let Some(d) = naive_distances(g, s) else { return Ok(None) };
    if d.iter().any(Option::is_none) {
        return Ok(None);
    }
    let d: Vec<Weight> = d.into_iter().map(Option::unwrap).collect();
    let mut tight = vec![Vec::new(); g.n()];
    for e in g.edges() {
        if d[e.tail] + e.weight == d[e.head] {
            tight[e.head].push(e.original_index);
        }
    }
    if (0..g.n()).any(|v| v != s && tight[v].is_empty()) {
        return Ok(None);
    }
    let mut best = None;
    let mut odometer = vec![0usize; g.n()];
    loop {
        let parent: Vec<Option<EdgeId>> =
            (0..g.n()).map(|v| if v == s { None } else { Some(tight[v][odometer[v]]) }).collect();
        if all_reach_root(g, s, &parent) && within(&color_counts(g, &parent), alpha) {
            let w: Weight = parent.iter().flatten().map(|&id| g.edge(id).unwrap().weight).sum();
            best = Some(best.map_or(w, |b: Weight| b.min(w)));
        }
        let mut v = g.n();
        loop {
            if v == 0 {
                return Ok(best);
            }
            v -= 1;
            if v == s {
                continue;
            }
            odometer[v] += 1;
            if odometer[v] < tight[v].len() {
                break;
            }
            odometer[v] = 0;
        }
    }
}

/// All simple paths from `s` to `t` as edge-id sequences over the arc list
/// `arcs` (`arcs[i]` is edge `i`). The `s = t` case yields only the empty path.
fn simple_paths(n: usize, arcs: &[(VertexId, VertexId)], s: VertexId, t: VertexId) -> Vec<Vec<EdgeId>> {
    let mut out_edges = vec![Vec::new(); n];
    for (i, &(u, _)) in arcs.iter().enumerate() {
        out_edges[u].push(i);
    }
    let mut paths = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();

    fn dfs(
        u: VertexId,
        t: VertexId,
        arcs: &[(VertexId, VertexId)],
        out_edges: &[Vec<EdgeId>],
        on_path: &mut Vec<bool>,
        path: &mut Vec<EdgeId>,
        paths: &mut Vec<Vec<EdgeId>>,
    ) {
        if u == t {
            paths.push(path.clone());
            return;
        }
        on_path[u] = true;
        for &i in &out_edges[u] {
            let v = arcs[i].1;
            if !on_path[v] {
                path.push(i);
                dfs(v, t, arcs, out_edges, on_path, path, paths);
                path.pop();
            }
        }
        on_path[u] = false;
    }

    if s < n && t < n {
        dfs(s, t, arcs, &out_edges, &mut on_path, &mut path, &mut paths);
    }
    paths
}

pub fn enumerate_st_paths(g: &ColoredDigraph, s: VertexId, t: VertexId) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    check_size(g.n())?;
    let arcs: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.original_index).collect();
    Ok(simple_paths(g.n(), &arcs, s, t).into_iter().map(|p| p.into_iter().map(|i| ids[i]).collect()).collect())
}

pub fn enumerate_vcc_st_paths(
    g: &VertexColoredDigraph,
    s: VertexId,
    t: VertexId,
) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    check_size_against(g.n, MAX_VCC_PATH_N)?;
    let arcs: Vec<(VertexId, VertexId)> = g.edges.iter().map(|&(u, v, _)| (u, v)).collect();
    Ok(simple_paths(g.n, &arcs, s, t))
}

/// Constrained shortest path by enumeration: a minimum-weight `s`-`t` path
/// (over all simple paths) that uses at most `α_i` edges of color `i`. The
/// graph must have no negative cycle, so the shortest walk is a simple path.
pub fn brute_cc_sp(
    g: &ColoredDigraph,
    s: VertexId,
    t: VertexId,
    alpha: &ColorConstraint,
) -> Result<Option<Vec<EdgeId>>, OracleError> {
    let paths = enumerate_st_paths(g, s, t)?;
    let weight = |p: &Vec<EdgeId>| -> Weight { p.iter().map(|&id| g.edge(id).unwrap().weight).sum() };
    let Some(best) = paths.iter().map(weight).min() else { return Ok(None) };
    Ok(paths.into_iter().find(|p| weight(p) == best && within(&color_counts_of_path(g, p), alpha)))
}

pub fn color_counts_of_path(g: &ColoredDigraph, path: &[EdgeId]) -> Vec<usize> {
    let mut counts = vec![0; g.q()];
    for &id in path {
        counts[g.edge(id).unwrap().color - 1] += 1;
    }
    counts
}

/// Vertex-colored variant: colors are counted over every vertex of the path,
/// `s` and `t` included.
pub fn brute_vcc_sp(
    g: &VertexColoredDigraph,
    s: VertexId,
    t: VertexId,
    alpha: &ColorConstraint,
) -> Result<Option<Vec<EdgeId>>, OracleError> {
    let paths = enumerate_vcc_st_paths(g, s, t)?;
    let weight = |p: &Vec<EdgeId>| -> Weight { p.iter().map(|&i| g.edges[i].2).sum() };
    let Some(best) = paths.iter().map(weight).min() else { return Ok(None) };
    Ok(paths.into_iter().find(|p| {
        let mut counts = vec![0; g.q];
        counts[g.vertex_color[s] - 1] += 1;
        for &i in p {
            counts[g.vertex_color[g.edges[i].1] - 1] += 1;
        }
        weight(p) == best && within(&counts, alpha)
    }))
}

/// Whether `D` (vertices `0..n`, arc list) has a Hamiltonian path starting
/// at `s`, by depth-first search over simple paths.
pub fn has_hamiltonian_path_from(n: usize, arcs: &[(VertexId, VertexId)], s: VertexId) -> bool {
    let mut out = vec![Vec::new(); n];
    for &(u, v) in arcs {
        out[u].push(v);
    }
    fn dfs(u: usize, depth: usize, n: usize, out: &[Vec<usize>], seen: &mut Vec<bool>) -> bool {
        if depth == n {
            return true;
        }
        for &v in &out[u] {
            if !seen[v] {
                seen[v] = true;
                if dfs(v, depth + 1, n, out, seen) {
                    return true;
                }
                seen[v] = false;
            }
        }
        false
    }
    let mut seen = vec![false; n];
    seen[s] = true;
    dfs(s, 1, n, &out, &mut seen)
}
