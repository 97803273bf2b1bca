use std::fmt;

use crate::graph::{Color, ColorConstraint, ColoredDigraph, EdgeId, VertexId, Weight};

use super::Arborescence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongRoot { expected: VertexId, found: VertexId },
    WrongVertexCount { expected: usize, found: usize },
    AlphaLength { expected: usize, found: usize },
    /// A parent edge id that `G` does not contain.
    UnknownEdge { vertex: VertexId, edge: EdgeId },
    /// The parent edge recorded for `vertex` actually enters `head`.
    ParentHeadMismatch { vertex: VertexId, edge: EdgeId, head: VertexId },
    /// Number of tree edges entering `vertex` (must be 0 at the root, 1 elsewhere).
    InDegree { vertex: VertexId, count: usize },
    /// `vertex` cannot be reached from the root along tree edges.
    Unreachable { vertex: VertexId },
    ColorBudget { color: Color, count: usize, budget: usize },
    ColorCountMismatch { color: Color, stored: usize, actual: usize },
    WeightMismatch { stored: Weight, actual: Weight },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongRoot { expected, found } => write!(f, "tree rooted at {found}, expected {expected}"),
            Violation::WrongVertexCount { expected, found } => {
                write!(f, "tree covers {found} vertices, graph has {expected}")
            }
            Violation::AlphaLength { expected, found } => {
                write!(f, "constraint has {found} entries, graph has {expected} colors")
            }
            Violation::UnknownEdge { vertex, edge } => write!(f, "vertex {vertex}: edge {edge} not in graph"),
            Violation::ParentHeadMismatch { vertex, edge, head } => {
                write!(f, "vertex {vertex}: parent edge {edge} enters {head}")
            }
            Violation::InDegree { vertex, count } => write!(f, "vertex {vertex} has {count} entering tree edges"),
            Violation::Unreachable { vertex } => write!(f, "vertex {vertex} unreachable from the root in the tree"),
            Violation::ColorBudget { color, count, budget } => {
                write!(f, "color {color} used {count} times, budget {budget}")
            }
            Violation::ColorCountMismatch { color, stored, actual } => {
                write!(f, "color {color}: stored count {stored}, actual {actual}")
            }
            Violation::WeightMismatch { stored, actual } => write!(f, "stored weight {stored}, actual {actual}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArbReport {
    pub violations: Vec<Violation>,
}

impl ArbReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `t` against `g`, root `s` and budget `alpha` from scratch. Never
/// fails; every problem found is listed in the report.
pub fn verify_arborescence(g: &ColoredDigraph, s: VertexId, t: &Arborescence, alpha: &ColorConstraint) -> ArbReport {
    let mut violations = Vec::new();
    if t.root != s {
        violations.push(Violation::WrongRoot { expected: s, found: t.root });
    }
    if t.n() != g.n() {
        violations.push(Violation::WrongVertexCount { expected: g.n(), found: t.n() });
        return ArbReport { violations };
    }
    if alpha.len() != g.q() {
        violations.push(Violation::AlphaLength { expected: g.q(), found: alpha.len() });
    }

    let n = g.n();
    let mut entering = vec![0usize; n];
    let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; g.q()];
    let mut weight: Weight = 0;
    for (v, id) in t.parent_edge.iter().enumerate().filter_map(|(v, e)| e.map(|e| (v, e))) {
        let Some(e) = g.edge(id) else {
            violations.push(Violation::UnknownEdge { vertex: v, edge: id });
            continue;
        };
        if e.head != v {
            violations.push(Violation::ParentHeadMismatch { vertex: v, edge: id, head: e.head });
        }
        entering[e.head] += 1;
        children[e.tail].push(e.head);
        counts[e.color - 1] += 1;
        weight += e.weight;
    }
    for (v, &count) in entering.iter().enumerate() {
        let expected = usize::from(v != s);
        if count != expected {
            violations.push(Violation::InDegree { vertex: v, count });
        }
    }

    let mut seen = vec![false; n];
    if s < n {
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &children[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    violations.extend((0..n).filter(|&v| !seen[v]).map(|vertex| Violation::Unreachable { vertex }));

    for (i, &count) in counts.iter().enumerate() {
        let color = i + 1;
        if let Some(&budget) = alpha.as_slice().get(i) {
            if count > budget {
                violations.push(Violation::ColorBudget { color, count, budget });
            }
        }
        let stored = t.color_counts.get(i).copied().unwrap_or(0);
        if stored != count {
            violations.push(Violation::ColorCountMismatch { color, stored, actual: count });
        }
    }
    if weight != t.total_weight {
        violations.push(Violation::WeightMismatch { stored: t.total_weight, actual: weight });
    }
    ArbReport { violations }
}
