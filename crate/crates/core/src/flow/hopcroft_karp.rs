use std::collections::VecDeque;

/// Bipartite graph given by left-side adjacency lists into `0..right`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteGraph {
    pub right: usize,
    pub adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        Self { right, adjacency: vec![Vec::new(); left] }
    }

    pub fn left(&self) -> usize {
        self.adjacency.len()
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(r < self.right);
        self.adjacency[l].push(r);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    pub left_to_right: Vec<Option<usize>>,
    pub right_to_left: Vec<Option<usize>>,
}

const INF: u32 = u32::MAX;

/// Maximum cardinality matching by Hopcroft-Karp: BFS layering from the free
/// left vertices, then vertex-disjoint shortest augmenting paths found by an
/// iterative DFS (no recursion, so long paths are fine).
pub fn hopcroft_karp(b: &BipartiteGraph) -> Matching {
    let left = b.left();
    let mut left_to_right: Vec<Option<usize>> = vec![None; left];
    let mut right_to_left: Vec<Option<usize>> = vec![None; b.right];
    let mut dist = vec![INF; left];
    let mut next = vec![0usize; left];
    let mut queue = VecDeque::new();
    let mut size = 0;

    loop {
        queue.clear();
        for l in 0..left {
            if left_to_right[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = INF;
            }
        }
        let mut free_layer = INF;
        while let Some(l) = queue.pop_front() {
            if dist[l] >= free_layer {
                continue;
            }
            for &r in &b.adjacency[l] {
                match right_to_left[r] {
                    None => free_layer = free_layer.min(dist[l] + 1),
                    Some(l2) if dist[l2] == INF => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if free_layer == INF {
            break;
        }

        next.fill(0);
        let mut stack: Vec<usize> = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        for root in 0..left {
            if left_to_right[root].is_some() || dist[root] != 0 {
                continue;
            }
            stack.clear();
            chosen.clear();
            stack.push(root);
            while let Some(&l) = stack.last() {
                if next[l] == b.adjacency[l].len() {
                    dist[l] = INF;
                    stack.pop();
                    chosen.pop();
                    continue;
                }
                let r = b.adjacency[l][next[l]];
                next[l] += 1;
                match right_to_left[r] {
                    None if dist[l] + 1 == free_layer => {
                        chosen.push(r);
                        for (&l, &r) in stack.iter().zip(&chosen) {
                            left_to_right[l] = Some(r);
                            right_to_left[r] = Some(l);
                        }
                        size += 1;
                        break;
                    }
                    Some(l2) if dist[l2] != INF && dist[l2] == dist[l] + 1 => {
                        chosen.push(r);
                        stack.push(l2);
                    }
                    _ => {}
                }
            }
        }
    }
    Matching { size, left_to_right, right_to_left }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Simple augmenting-path matcher (Kuhn), one DFS per left vertex.
    fn kuhn(b: &BipartiteGraph) -> usize {
        fn try_kuhn(b: &BipartiteGraph, l: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
            for &r in &b.adjacency[l] {
                if !seen[r] {
                    seen[r] = true;
                    if owner[r].is_none_or(|l2| try_kuhn(b, l2, seen, owner)) {
                        owner[r] = Some(l);
                        return true;
                    }
                }
            }
            false
        }
        let mut owner = vec![None; b.right];
        (0..b.left()).filter(|&l| try_kuhn(b, l, &mut vec![false; b.right], &mut owner)).count()
    }

    fn assert_consistent(b: &BipartiteGraph, m: &Matching) {
        let mut count = 0;
        for (l, r) in m.left_to_right.iter().enumerate() {
            if let Some(r) = *r {
                assert!(b.adjacency[l].contains(&r));
                assert_eq!(m.right_to_left[r], Some(l));
                count += 1;
            }
        }
        assert_eq!(count, m.size);
    }

    #[test]
    fn empty_graph() {
        let m = hopcroft_karp(&BipartiteGraph::default());
        assert_eq!(m.size, 0);
    }

    #[test]
    fn complete_three_by_three() {
        let mut b = BipartiteGraph::new(3, 3);
        for l in 0..3 {
            for r in 0..3 {
                b.add_edge(l, r);
            }
        }
        let m = hopcroft_karp(&b);
        assert_consistent(&b, &m);
        assert_eq!(m.size, 3);
    }

    #[test]
    fn needs_augmentation_through_matched_vertex() {
        let mut b = BipartiteGraph::new(2, 2);
        b.add_edge(0, 0);
        b.add_edge(0, 1);
        b.add_edge(1, 0);
        let m = hopcroft_karp(&b);
        assert_consistent(&b, &m);
        assert_eq!(m.size, 2);
    }

    #[test]
    fn long_augmenting_chain() {
        // The first phase matches l -> l + 1; the last left vertex then needs an
        // augmenting path through every other vertex.
        let k = 5000;
        let mut b = BipartiteGraph::new(k, k);
        for l in 0..k - 1 {
            b.add_edge(l, l + 1);
            b.add_edge(l, l);
        }
        b.add_edge(k - 1, k - 1);
        let m = hopcroft_karp(&b);
        assert_consistent(&b, &m);
        assert_eq!(m.size, k);
    }

    fn arb_bipartite() -> impl Strategy<Value = BipartiteGraph> {
        (0usize..8, 0usize..8).prop_flat_map(|(l, r)| {
            prop::collection::vec((0..l.max(1), 0..r.max(1)), 0..30).prop_map(move |edges| {
                let mut b = BipartiteGraph::new(l, r);
                if l > 0 && r > 0 {
                    for (x, y) in edges {
                        b.add_edge(x, y);
                    }
                }
                b
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn cardinality_matches_kuhn(b in arb_bipartite()) {
            let m = hopcroft_karp(&b);
            assert_consistent(&b, &m);
            prop_assert_eq!(m.size, kuhn(&b));
        }
    }
}
