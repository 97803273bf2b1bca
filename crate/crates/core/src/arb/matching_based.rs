use crate::flow::{hopcroft_karp, BipartiteGraph, InEdgeTable};
use crate::graph::{Color, ColorConstraint, VertexId};
use crate::spg::SpgGraph;

use super::{preflight, trivial_tree, ArbError, ArbOutcome, Arborescence, Infeasibility};

/// Decides and builds an α-colored arborescence of `g_s` through a maximum
/// matching between color slots (α_i copies of color `i`) and the non-root
/// vertices. When Σα = n − 1 the answer is an exactly α-colored tree.
pub fn cc_arb_match(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<ArbOutcome, ArbError> {
    if let Some(reason) = preflight(g_s, alpha)? {
        return Ok(ArbOutcome::Infeasible(reason));
    }
    let (n, root) = (g_s.n(), g_s.root());
    let needed = n.saturating_sub(1);
    if needed == 0 {
        return Ok(ArbOutcome::Feasible(trivial_tree(g_s)));
    }
    let alpha = alpha.clamped(needed);

    let pi = g_s.base().in_degree_by_color();
    let right_vertex: Vec<VertexId> = (0..n).filter(|&v| v != root).collect();
    let mut slot_color: Vec<Color> = Vec::with_capacity(alpha.sum());
    let mut b = BipartiteGraph::new(0, needed);
    for color in 1..=g_s.q() {
        let accepting: Vec<usize> =
            right_vertex.iter().enumerate().filter(|(_, &v)| pi.get(v, color) > 0).map(|(r, _)| r).collect();
        for _ in 0..alpha.get(color) {
            slot_color.push(color);
            b.adjacency.push(accepting.clone());
        }
    }

    let m = hopcroft_karp(&b);
    if m.size < needed {
        return Ok(ArbOutcome::Infeasible(Infeasibility::MatchingDeficit { matched: m.size, needed }));
    }
    let table = InEdgeTable::new(g_s);
    let mut parent = vec![None; n];
    for (r, &v) in right_vertex.iter().enumerate() {
        let slot = m.right_to_left[r].expect("matching saturates the right side");
        parent[v] = table.first(v, slot_color[slot]);
    }
    Ok(ArbOutcome::Feasible(Arborescence::from_parent_edges(g_s.base(), root, parent)))
}
