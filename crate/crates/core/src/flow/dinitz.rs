use std::collections::VecDeque;

use super::{FlowAssignment, FlowNetwork, FlowStats, NodeId};

/// Residual graph with paired arc slots: slot `2k` is arc `k` forward, slot
/// `2k + 1` its reverse, so `slot ^ 1` is always the partner.
pub(super) struct Residual {
    pub head: Vec<NodeId>,
    pub cap: Vec<i64>,
    pub cost: Vec<i64>,
    /// CSR adjacency: slots leaving node `u` are `adj[start[u]..start[u + 1]]`,
    /// in arc insertion order.
    pub start: Vec<usize>,
    pub adj: Vec<usize>,
}

impl Residual {
    pub fn new(h: &FlowNetwork) -> Self {
        let m = h.arcs().len();
        let mut head = Vec::with_capacity(2 * m);
        let mut cap = Vec::with_capacity(2 * m);
        let mut cost = Vec::with_capacity(2 * m);
        let mut degree = vec![0usize; h.node_count() + 1];
        for a in h.arcs() {
            head.extend([a.to, a.from]);
            cap.extend([a.capacity, 0]);
            cost.extend([a.cost, -a.cost]);
            degree[a.from] += 1;
            degree[a.to] += 1;
        }
        let mut start = vec![0usize; h.node_count() + 1];
        for u in 0..h.node_count() {
            start[u + 1] = start[u] + degree[u];
        }
        let mut fill = start.clone();
        let mut adj = vec![0usize; 2 * m];
        for (k, a) in h.arcs().iter().enumerate() {
            adj[fill[a.from]] = 2 * k;
            fill[a.from] += 1;
            adj[fill[a.to]] = 2 * k + 1;
            fill[a.to] += 1;
        }
        Self { head, cap, cost, start, adj }
    }

    pub fn tail(&self, slot: usize) -> NodeId {
        self.head[slot ^ 1]
    }

    pub fn out_slots(&self, u: NodeId) -> &[usize] {
        &self.adj[self.start[u]..self.start[u + 1]]
    }

    /// Flow on original arc `k` is the residual capacity of its reverse slot.
    pub fn arc_flows(&self) -> Vec<i64> {
        self.cap.iter().skip(1).step_by(2).copied().collect()
    }
}

const DELETED: u32 = u32::MAX;

/// Maximum flow by Dinitz's blocking-flow method.
///
/// Each phase builds BFS levels from the source, then walks the level graph
/// depth-first with current-arc pointers: *advance* along an admissible arc,
/// *augment* on reaching the sink (cutting the path back to its first
/// saturated arc), or *retreat* from a dead end, deleting that node for the
/// rest of the phase. The phase ends when the source itself retreats.
pub fn dinitz_max_flow(h: &FlowNetwork) -> FlowAssignment {
    let mut r = Residual::new(h);
    let (s, t) = (h.source(), h.sink());
    let n = h.node_count();
    let mut stats = FlowStats::default();
    let mut value = 0i64;
    let mut level = vec![DELETED; n];
    let mut current = vec![0usize; n];
    let mut path: Vec<usize> = Vec::new();
    let mut queue = VecDeque::with_capacity(n);

    if s == t {
        return FlowAssignment { flow: r.arc_flows(), value, total_cost: 0, stats };
    }

    loop {
        level.fill(DELETED);
        level[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &slot in r.out_slots(u) {
                let v = r.head[slot];
                if r.cap[slot] > 0 && level[v] == DELETED {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if level[t] == DELETED {
            break;
        }
        stats.phases += 1;
        current.copy_from_slice(&r.start[..n]);
        path.clear();
        let mut u = s;
        loop {
            if u == t {
                let bottleneck = path.iter().map(|&slot| r.cap[slot]).min().unwrap_or(0);
                for &slot in &path {
                    r.cap[slot] -= bottleneck;
                    r.cap[slot ^ 1] += bottleneck;
                }
                value += bottleneck;
                stats.augments += 1;
                let cut = path.iter().position(|&slot| r.cap[slot] == 0).unwrap_or(0);
                u = r.tail(path[cut]);
                path.truncate(cut);
                continue;
            }
            let end = r.start[u + 1];
            let mut advanced = false;
            while current[u] < end {
                let slot = r.adj[current[u]];
                let v = r.head[slot];
                if r.cap[slot] > 0 && level[v] != DELETED && level[v] == level[u] + 1 {
                    path.push(slot);
                    stats.advances += 1;
                    u = v;
                    advanced = true;
                    break;
                }
                current[u] += 1;
            }
            if advanced {
                continue;
            }
            stats.retreats += 1;
            if u == s {
                break;
            }
            level[u] = DELETED;
            let slot = path.pop().expect("retreat below the source");
            u = r.tail(slot);
            current[u] += 1;
        }
    }
    FlowAssignment { flow: r.arc_flows(), value, total_cost: 0, stats }
}

/// Source side of a minimum cut: nodes reachable from the source in the
/// residual graph of `f`, with the capacity of arcs leaving that side.
pub fn min_cut(h: &FlowNetwork, f: &FlowAssignment) -> (Vec<bool>, i64) {
    let mut side = vec![false; h.node_count()];
    let mut stack = vec![h.source()];
    side[h.source()] = true;
    let mut out: Vec<Vec<(NodeId, i64)>> = vec![Vec::new(); h.node_count()];
    for (a, &x) in h.arcs().iter().zip(&f.flow) {
        out[a.from].push((a.to, a.capacity - x));
        out[a.to].push((a.from, x));
    }
    while let Some(u) = stack.pop() {
        for &(v, residual) in &out[u] {
            if residual > 0 && !side[v] {
                side[v] = true;
                stack.push(v);
            }
        }
    }
    let capacity = h.arcs().iter().filter(|a| side[a.from] && !side[a.to]).map(|a| a.capacity).sum();
    (side, capacity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{build_arb_network, ArbNetwork};
    use crate::graph::fixtures::*;
    use crate::graph::{ColorConstraint, ColoredDigraph};
    use crate::spg::SpgGraph;
    use proptest::prelude::*;

    fn diamond_network(alpha: Vec<usize>) -> ArbNetwork {
        let spg = SpgGraph::from_dag(&diamond(), S).unwrap();
        let pi = spg.base().in_degree_by_color();
        build_arb_network(&spg, &ColorConstraint::new(alpha), &pi)
    }

    fn check(h: &FlowNetwork) -> FlowAssignment {
        let f = dinitz_max_flow(h);
        f.check_feasible(h).unwrap();
        let (side, cut) = min_cut(h, &f);
        assert!(!side[h.sink()] || f.value == 0 && h.source() == h.sink());
        assert_eq!(cut, f.value);
        f
    }

    #[test]
    fn textbook_network() {
        let mut h = FlowNetwork::new(6, 0, 5);
        for (u, v, c) in [(0, 1, 10), (0, 2, 10), (1, 3, 4), (1, 4, 8), (2, 4, 9), (3, 5, 10), (4, 3, 6), (4, 5, 10)] {
            h.add_arc(u, v, c, 0);
        }
        assert_eq!(check(&h).value, 19);
    }

    #[test]
    fn diamond_with_enough_budget_saturates() {
        let h = diamond_network(vec![2, 1]);
        let f = check(&h.network);
        assert_eq!(f.value, 3);
        assert_eq!(h.colors_used(&f), vec![(A, 1), (T, 1), (B, 2)]);
    }

    #[test]
    fn diamond_without_blue_budget_falls_short() {
        assert_eq!(check(&diamond_network(vec![2, 0]).network).value, 2);
    }

    #[test]
    fn no_source_arcs_means_zero_flow() {
        let h = diamond_network(vec![0, 0]);
        let f = check(&h.network);
        assert_eq!(f.value, 0);
        assert_eq!(f.phases_executed(), 0);
    }

    #[test]
    fn counters_are_consistent() {
        let h = diamond_network(vec![2, 1]);
        let f = dinitz_max_flow(&h.network);
        assert_eq!(f.stats.augments, 3);
        // Paths share prefixes after an augment, so advances can be fewer
        // than augments times path length, but each augment needs one.
        assert!(f.stats.advances >= f.stats.augments.max(3));
        assert!(f.stats.retreats >= f.stats.phases);
    }

    #[test]
    fn vertex_nodes_take_at_most_one_color() {
        let g = ColoredDigraph::from_edges(
            4,
            3,
            [(0, 1, 1, 0), (0, 1, 2, 0), (0, 2, 3, 0), (1, 2, 1, 0), (1, 3, 2, 0), (2, 3, 3, 0), (0, 3, 1, 0)],
        )
        .unwrap();
        let spg = SpgGraph::from_dag(&g, 0).unwrap();
        let h = build_arb_network(&spg, &ColorConstraint::new(vec![3, 3, 3]), &g.in_degree_by_color());
        let f = check(&h.network);
        let mut used = [0; 4];
        for (v, _) in h.colors_used(&f) {
            used[v] += 1;
        }
        assert!(used.iter().all(|&k| k <= 1));
    }

    fn arb_network() -> impl Strategy<Value = FlowNetwork> {
        (2usize..9).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, 0i64..6), 0..25).prop_map(move |raw| {
                let mut h = FlowNetwork::new(n, 0, n - 1);
                for (u, v, c) in raw {
                    if u != v {
                        h.add_arc(u, v, c, 0);
                    }
                }
                h
            })
        })
    }

    proptest! {
        #[test]
        fn max_flow_equals_min_cut(h in arb_network()) {
            let f = dinitz_max_flow(&h);
            prop_assert!(f.check_feasible(&h).is_ok());
            let (side, cut) = min_cut(&h, &f);
            prop_assert!(!side[h.sink()]);
            prop_assert_eq!(cut, f.value);
        }
    }
}
