//! Seeded instance generators. Every generator is a pure function of its
//! arguments; the same seed always yields the same graph.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Color, ColorConstraint, ColoredDigraph, VertexId, Weight};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_color(rng: &mut impl Rng, q: usize) -> Color {
    rng.gen_range(1..=q)
}

/// A DAG on `0..n` whose edges all go from a lower to a higher vertex id. Each
/// forward pair is an edge with probability `density`; any non-root vertex
/// left without an in-edge gets one from vertex 0, so 0 reaches everything.
pub fn gen_random_dag(n: usize, q: usize, density: f64, weight_range: RangeInclusive<Weight>, seed: u64) -> ColoredDigraph {
    assert!(q >= 1 || n <= 1, "edges need at least one color");
    let mut rng = rng(seed);
    let mut g = ColoredDigraph::new(n, q);
    let mut has_parent = vec![false; n];
    for u in 0..n {
        for (v, parent) in has_parent.iter_mut().enumerate().skip(u + 1) {
            if rng.gen_bool(density) {
                g.add_edge(u, v, random_color(&mut rng, q), rng.gen_range(weight_range.clone()));
                *parent = true;
            }
        }
    }
    for (v, _) in has_parent.iter().enumerate().skip(1).filter(|(_, &p)| !p) {
        g.add_edge(0, v, random_color(&mut rng, q), rng.gen_range(weight_range.clone()));
    }
    g
}

/// A layered DAG with `n` vertices and exactly `m` edges (`m ≥ n − 1`). Vertex
/// 0 is layer 0; the rest fill layers of `width` vertices in id order. Every
/// edge joins consecutive layers with weight 1, so all edges are tight and
/// the graph is its own shortest paths graph from 0.
pub fn gen_layered_dag(n: usize, width: usize, m: usize, q: usize, seed: u64) -> ColoredDigraph {
    assert!(n >= 1 && width >= 1 && q >= 1 && m >= n - 1);
    let mut rng = rng(seed);
    let layer_of = |v: usize| if v == 0 { 0 } else { (v - 1) / width + 1 };
    let layer_start = |l: usize| if l == 0 { 0 } else { (l - 1) * width + 1 };
    let prev_layer = |v: usize| {
        let l = layer_of(v) - 1;
        let lo = layer_start(l);
        let hi = if l == 0 { 1 } else { (layer_start(l + 1)).min(n) };
        lo..hi
    };
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        edges.push((rng.gen_range(prev_layer(v)), v));
    }
    while edges.len() < m && n > 1 {
        let v = rng.gen_range(1..n);
        edges.push((rng.gen_range(prev_layer(v)), v));
    }
    let mut g = ColoredDigraph::new(n, q);
    for (u, v) in edges {
        g.add_edge(u, v, random_color(&mut rng, q), 1);
    }
    g
}

/// An arbitrary digraph without self-loops: each ordered pair is an edge with
/// probability `density`, weights in `1..=10`. All weights are positive, so
/// every cycle is too.
pub fn gen_random_positive_cycle_digraph(n: usize, q: usize, density: f64, seed: u64) -> ColoredDigraph {
    assert!(q >= 1 || n <= 1, "edges need at least one color");
    let mut rng = rng(seed);
    let mut g = ColoredDigraph::new(n, q);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                g.add_edge(u, v, random_color(&mut rng, q), rng.gen_range(1..=10));
            }
        }
    }
    g
}

/// Like [`gen_random_positive_cycle_digraph`] but with a spanning path of
/// random order out of vertex 0 first, so every vertex is reachable from 0.
/// Small weights make ties among shortest paths (and hence non-trivial
/// shortest paths graphs) common.
pub fn gen_rooted_positive_digraph(n: usize, q: usize, density: f64, max_weight: Weight, seed: u64) -> ColoredDigraph {
    assert!(q >= 1 || n <= 1, "edges need at least one color");
    let mut rng = rng(seed);
    let mut g = ColoredDigraph::new(n, q);
    let mut order: Vec<VertexId> = (1..n).collect();
    order.shuffle(&mut rng);
    let mut prev = 0;
    for &v in &order {
        g.add_edge(prev, v, random_color(&mut rng, q), rng.gen_range(1..=max_weight));
        prev = v;
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                g.add_edge(u, v, random_color(&mut rng, q), rng.gen_range(1..=max_weight));
            }
        }
    }
    g
}

/// An uncolored simple digraph on `0..n` as an arc list, each ordered pair
/// present with probability `density`.
pub fn gen_random_uncolored_digraph(n: usize, density: f64, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut rng = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                arcs.push((u, v));
            }
        }
    }
    arcs
}

/// The hardness gadget: `D` (on `0..n`, simple) plus a new vertex `t = n`
/// entered from every vertex of `D`. Vertices of `D` are numbered `v_1 = s`,
/// then the others in id order, and every edge leaving `v_i` gets color `i`.
/// With the all-ones constraint, the result has a feasible arborescence from
/// `s` iff `D` has a Hamiltonian path starting at `s`.
pub fn gen_hamiltonian_gadget(
    n: usize,
    arcs: &[(VertexId, VertexId)],
    s: VertexId,
) -> (ColoredDigraph, VertexId, ColorConstraint) {
    assert!(n >= 1 && s < n);
    let mut rank = vec![0; n];
    rank[s] = 1;
    let mut next = 2;
    for (v, r) in rank.iter_mut().enumerate() {
        if v != s {
            *r = next;
            next += 1;
        }
    }
    let t = n;
    let mut g = ColoredDigraph::new(n + 1, n);
    for &(u, v) in arcs {
        g.add_edge(u, v, rank[u], 1);
    }
    for (v, &r) in rank.iter().enumerate() {
        g.add_edge(v, t, r, 1);
    }
    (g, s, ColorConstraint::new(vec![1; n]))
}

/// A random constraint with `Σα ∈ [n − 2, 2n]` (floored at 0), spread over
/// the `q` colors at random.
pub fn gen_alpha(rng: &mut impl Rng, n: usize, q: usize) -> ColorConstraint {
    let mut alpha = vec![0; q];
    if q == 0 {
        return ColorConstraint::new(alpha);
    }
    let total = rng.gen_range(n.saturating_sub(2)..=2 * n);
    for _ in 0..total {
        alpha[rng.gen_range(0..q)] += 1;
    }
    ColorConstraint::new(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dag_density_zero_is_a_star() {
        let g = gen_random_dag(5, 2, 0.0, 1..=1, 1);
        assert_eq!(g.m(), 4);
        assert!(g.edges().iter().all(|e| e.tail == 0));
    }

    #[test]
    fn dag_density_one_is_complete_forward() {
        let g = gen_random_dag(4, 3, 1.0, -5..=20, 2);
        assert_eq!(g.m(), 6);
        assert!(g.edges().iter().all(|e| e.tail < e.head));
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_random_dag(7, 3, 0.4, -5..=20, 9), gen_random_dag(7, 3, 0.4, -5..=20, 9));
        assert_eq!(gen_random_positive_cycle_digraph(7, 3, 0.4, 9), gen_random_positive_cycle_digraph(7, 3, 0.4, 9));
        assert_eq!(gen_layered_dag(50, 7, 120, 2, 3), gen_layered_dag(50, 7, 120, 2, 3));
    }

    #[test]
    fn positive_digraph_edge_count_matches_density_extremes() {
        assert_eq!(gen_random_positive_cycle_digraph(5, 2, 1.0, 0).m(), 20);
        assert_eq!(gen_random_positive_cycle_digraph(5, 2, 0.0, 0).m(), 0);
        let g = gen_random_positive_cycle_digraph(8, 2, 0.5, 4);
        assert!(g.validate().is_ok());
        assert!(g.edges().iter().all(|e| e.weight > 0));
    }

    #[test]
    fn layered_dag_shape() {
        let g = gen_layered_dag(101, 10, 300, 2, 5);
        assert_eq!((g.n(), g.m()), (101, 300));
        let indeg = g.in_degrees();
        assert!(indeg[1..].iter().all(|&d| d >= 1));
        assert!(g.edges().iter().all(|e| e.tail < e.head));
    }

    #[test]
    fn gadget_of_single_vertex() {
        let (g, s, alpha) = gen_hamiltonian_gadget(1, &[], 0);
        assert_eq!((g.n(), g.q(), g.m(), s), (2, 1, 1, 0));
        assert_eq!(alpha.as_slice(), &[1]);
    }

    #[test]
    fn alpha_sum_in_range() {
        let mut r = rng(11);
        for n in 1..9 {
            let a = gen_alpha(&mut r, n, 3);
            assert!(a.sum() >= n.saturating_sub(2) && a.sum() <= 2 * n);
        }
    }
}
