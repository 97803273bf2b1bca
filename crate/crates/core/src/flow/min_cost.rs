use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::dinitz::Residual;
use super::{FlowAssignment, FlowNetwork, FlowStats, NodeId};

/// Minimum-cost maximum flow by successive shortest augmenting paths.
///
/// Costs may be negative as long as the network has no negative cycle (the
/// arborescence networks are acyclic). Initial potentials come from
/// Bellman-Ford; every later round runs Dijkstra on reduced costs. Each round
/// augments along one cheapest source-sink path, so after the last round the
/// flow is maximum and cheapest among maximum flows.
pub fn min_cost_max_flow(h: &FlowNetwork) -> FlowAssignment {
    let mut r = Residual::new(h);
    let (s, t) = (h.source(), h.sink());
    let n = h.node_count();
    let mut stats = FlowStats::default();
    let (mut value, mut total_cost) = (0i64, 0i64);
    if s == t {
        return FlowAssignment { flow: r.arc_flows(), value, total_cost, stats };
    }

    let mut potential = initial_potentials(&r, s, n);
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    loop {
        dist.fill(None);
        via.fill(None);
        dist[s] = Some(0);
        heap.push(Reverse((0i64, s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u] != Some(d) {
                continue;
            }
            for &slot in r.out_slots(u) {
                if r.cap[slot] == 0 {
                    continue;
                }
                let v = r.head[slot];
                let reduced = r.cost[slot] + potential[u] - potential[v];
                debug_assert!(reduced >= 0, "negative reduced cost {reduced}");
                let nd = d + reduced;
                if dist[v].is_none_or(|old| nd < old) {
                    dist[v] = Some(nd);
                    via[v] = Some(slot);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[t].is_none() {
            break;
        }
        stats.phases += 1;
        for v in 0..n {
            if let Some(d) = dist[v] {
                potential[v] += d;
            }
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while let Some(slot) = via[v] {
            bottleneck = bottleneck.min(r.cap[slot]);
            v = r.tail(slot);
        }
        let mut v = t;
        while let Some(slot) = via[v] {
            r.cap[slot] -= bottleneck;
            r.cap[slot ^ 1] += bottleneck;
            total_cost += bottleneck * r.cost[slot];
            stats.advances += 1;
            v = r.tail(slot);
        }
        value += bottleneck;
        stats.augments += 1;
    }
    FlowAssignment { flow: r.arc_flows(), value, total_cost, stats }
}

/// Bellman-Ford over arcs with positive residual capacity. Nodes the source
/// cannot reach keep potential 0; they stay unreachable for the whole run.
fn initial_potentials(r: &Residual, s: NodeId, n: usize) -> Vec<i64> {
    let mut dist: Vec<Option<i64>> = vec![None; n];
    dist[s] = Some(0);
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            let Some(du) = dist[u] else { continue };
            for &slot in r.out_slots(u) {
                if r.cap[slot] == 0 {
                    continue;
                }
                let v = r.head[slot];
                let nd = du + r.cost[slot];
                if dist[v].is_none_or(|old| nd < old) {
                    dist[v] = Some(nd);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist.into_iter().map(|d| d.unwrap_or(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{build_min_arb_network, dinitz_max_flow, InEdgeTable};
    use crate::graph::fixtures::*;
    use crate::graph::ColorConstraint;
    use crate::spg::SpgGraph;
    use proptest::prelude::*;

    fn weighted_diamond_network(alpha: Vec<usize>) -> FlowNetwork {
        let spg = SpgGraph::from_dag(&weighted_diamond(), S).unwrap();
        build_min_arb_network(&spg, &ColorConstraint::new(alpha), &InEdgeTable::new(&spg)).network
    }

    /// Exhaustive search over integral flows: every arc takes each value in
    /// `0..=capacity`, conservation is checked at the end.
    fn brute_min_cost_max_flow(h: &FlowNetwork) -> (i64, i64) {
        fn go(h: &FlowNetwork, k: usize, flow: &mut Vec<i64>, best: &mut (i64, i64)) {
            if k == h.arcs().len() {
                let mut excess = vec![0i64; h.node_count()];
                let mut cost = 0;
                for (a, &f) in h.arcs().iter().zip(flow.iter()) {
                    excess[a.from] -= f;
                    excess[a.to] += f;
                    cost += f * a.cost;
                }
                let ok = (0..h.node_count()).all(|v| v == h.source() || v == h.sink() || excess[v] == 0);
                let value = excess[h.sink()];
                if ok && (value > best.0 || value == best.0 && cost < best.1) {
                    *best = (value, cost);
                }
                return;
            }
            for f in 0..=h.arcs()[k].capacity {
                flow.push(f);
                go(h, k + 1, flow, best);
                flow.pop();
            }
        }
        let mut best = (0, 0);
        go(h, 0, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn zero_costs_give_zero_total() {
        let spg = SpgGraph::from_dag(&diamond(), S).unwrap();
        let h = build_min_arb_network(&spg, &ColorConstraint::new(vec![2, 1]), &InEdgeTable::new(&spg)).network;
        let mut zeroed = FlowNetwork::new(h.node_count(), h.source(), h.sink());
        for a in h.arcs() {
            zeroed.add_arc(a.from, a.to, a.capacity, 0);
        }
        let f = min_cost_max_flow(&zeroed);
        assert_eq!((f.value, f.total_cost), (3, 0));
    }

    #[test]
    fn diamond_prefers_cheap_red_edge_into_t() {
        let h = weighted_diamond_network(vec![2, 1]);
        let f = min_cost_max_flow(&h);
        f.check_feasible(&h).unwrap();
        assert_eq!((f.value, f.total_cost), (3, 3));
        assert_eq!(brute_min_cost_max_flow(&h), (3, 3));
    }

    #[test]
    fn diamond_forced_onto_heavy_blue_edge() {
        let h = weighted_diamond_network(vec![1, 2]);
        let f = min_cost_max_flow(&h);
        assert_eq!((f.value, f.total_cost), (3, 7));
        assert_eq!(brute_min_cost_max_flow(&h), (3, 7));
    }

    #[test]
    fn negative_costs_are_handled() {
        let mut h = FlowNetwork::new(4, 0, 3);
        h.add_arc(0, 1, 1, 0);
        h.add_arc(0, 2, 1, 0);
        h.add_arc(1, 3, 1, -4);
        h.add_arc(2, 3, 1, 2);
        h.add_arc(1, 2, 1, -1);
        let f = min_cost_max_flow(&h);
        assert_eq!((f.value, f.total_cost), brute_min_cost_max_flow(&h));
    }

    fn small_dag_network(max_arcs: usize, max_cap: i64) -> impl Strategy<Value = FlowNetwork> {
        (3usize..6).prop_flat_map(move |n| {
            prop::collection::vec((0..n, 0..n, 0..=max_cap, -4i64..6), 1..=max_arcs).prop_map(move |raw| {
                let mut h = FlowNetwork::new(n, 0, n - 1);
                for (u, v, c, w) in raw {
                    // Forward arcs only, so no negative cycles.
                    if u < v {
                        h.add_arc(u, v, c, w);
                    }
                }
                h
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn matches_exhaustive_enumeration(h in small_dag_network(12, 1)) {
            let f = min_cost_max_flow(&h);
            prop_assert!(f.check_feasible(&h).is_ok());
            prop_assert_eq!((f.value, f.total_cost), brute_min_cost_max_flow(&h));
        }

        #[test]
        fn matches_exhaustive_enumeration_with_wider_arcs(h in small_dag_network(8, 3)) {
            let f = min_cost_max_flow(&h);
            prop_assert!(f.check_feasible(&h).is_ok());
            prop_assert_eq!((f.value, f.total_cost), brute_min_cost_max_flow(&h));
            prop_assert_eq!(f.value, dinitz_max_flow(&h).value);
        }
    }
}
