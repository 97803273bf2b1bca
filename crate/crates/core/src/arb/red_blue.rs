//! Two-color solvers. Color 1 is red, color 2 is blue.
//!
//! Non-root vertices split into those entered only by red edges (`v_r`), only
//! by blue edges (`v_b`), and by both (`v_rb`). Feasibility is a matter of
//! counting; the minimum-weight variant sends each `v_rb` vertex to its
//! cheaper color and then moves the vertices with the smallest penalty to the
//! other color until the budgets hold.

use crate::graph::{ColorConstraint, EdgeId, VertexId, Weight};
use crate::spg::SpgGraph;

use super::{preflight, trivial_tree, ArbError, ArbOutcome, Arborescence, Infeasibility};

const RED: usize = 1;
const BLUE: usize = 2;

/// Per-vertex entering-edge summary for a red-blue graph, built in one pass
/// over the edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbPartition {
    pub v_r: Vec<VertexId>,
    pub v_b: Vec<VertexId>,
    pub v_rb: Vec<VertexId>,
    /// Smallest-index red / blue edge entering each vertex.
    pub first_red: Vec<Option<EdgeId>>,
    pub first_blue: Vec<Option<EdgeId>>,
    /// Lightest red / blue edge entering each vertex (`r_v`, `b_v`), ties by index.
    pub min_red: Vec<Option<(Weight, EdgeId)>>,
    pub min_blue: Vec<Option<(Weight, EdgeId)>>,
}

impl RbPartition {
    pub fn compute(g_s: &SpgGraph) -> Self {
        let n = g_s.n();
        let mut first_red = vec![None; n];
        let mut first_blue = vec![None; n];
        let mut min_red: Vec<Option<(Weight, EdgeId)>> = vec![None; n];
        let mut min_blue: Vec<Option<(Weight, EdgeId)>> = vec![None; n];
        for e in g_s.base().edges() {
            let (first, min) = if e.color == RED {
                (&mut first_red[e.head], &mut min_red[e.head])
            } else {
                (&mut first_blue[e.head], &mut min_blue[e.head])
            };
            first.get_or_insert(e.original_index);
            if min.is_none_or(|(w, _)| e.weight < w) {
                *min = Some((e.weight, e.original_index));
            }
        }
        let (mut v_r, mut v_b, mut v_rb) = (Vec::new(), Vec::new(), Vec::new());
        for v in (0..n).filter(|&v| v != g_s.root()) {
            match (first_red[v].is_some(), first_blue[v].is_some()) {
                (true, false) => v_r.push(v),
                (false, true) => v_b.push(v),
                (true, true) => v_rb.push(v),
                (false, false) => {}
            }
        }
        Self { v_r, v_b, v_rb, first_red, first_blue, min_red, min_blue }
    }
}

/// How `cc_rb_arb` divides `v_rb`: `x` goes red, `y` goes blue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedBlueSplit {
    pub x: Vec<VertexId>,
    pub y: Vec<VertexId>,
}

/// How `min_cc_rb_arb` divides `v_rb`: `v_r_prime` holds the vertices whose
/// lightest red edge is no heavier than their lightest blue one, `v_b_prime`
/// the rest, and `swap` the vertices moved to their dearer color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinRedBlueSplit {
    pub v_r_prime: Vec<VertexId>,
    pub v_b_prime: Vec<VertexId>,
    pub swap: Vec<VertexId>,
}

fn check_two_colors(g_s: &SpgGraph) -> Result<(), ArbError> {
    match g_s.q() {
        2 => Ok(()),
        q => Err(ArbError::WrongColorCount { q }),
    }
}

fn forced_over_budget(p: &RbPartition, alpha: &ColorConstraint) -> Option<Infeasibility> {
    if p.v_r.len() > alpha.get(RED) {
        return Some(Infeasibility::ForcedColorOverBudget { color: RED, forced: p.v_r.len(), budget: alpha.get(RED) });
    }
    if p.v_b.len() > alpha.get(BLUE) {
        return Some(Infeasibility::ForcedColorOverBudget {
            color: BLUE,
            forced: p.v_b.len(),
            budget: alpha.get(BLUE),
        });
    }
    None
}

/// Linear-time α-colored arborescence for two colors. `v_rb` is filled red in
/// ascending vertex order up to the leftover red budget; the rest go blue.
pub fn cc_rb_arb(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<ArbOutcome, ArbError> {
    check_two_colors(g_s)?;
    if let Some(reason) = preflight(g_s, alpha)? {
        return Ok(ArbOutcome::Infeasible(reason));
    }
    if g_s.n() <= 1 {
        return Ok(ArbOutcome::Feasible(trivial_tree(g_s)));
    }
    let p = RbPartition::compute(g_s);
    if let Some(reason) = forced_over_budget(&p, alpha) {
        return Ok(ArbOutcome::Infeasible(reason));
    }
    let red_slack = alpha.get(RED) - p.v_r.len();
    let blue_slack = alpha.get(BLUE) - p.v_b.len();
    let slack = red_slack.saturating_add(blue_slack);
    if p.v_rb.len() > slack {
        return Ok(ArbOutcome::Infeasible(Infeasibility::SharedOverBudget { shared: p.v_rb.len(), slack }));
    }
    let split = red_slack.min(p.v_rb.len());
    let split = RedBlueSplit { x: p.v_rb[..split].to_vec(), y: p.v_rb[split..].to_vec() };

    let mut parent = vec![None; g_s.n()];
    for &v in p.v_r.iter().chain(&split.x) {
        parent[v] = p.first_red[v];
    }
    for &v in p.v_b.iter().chain(&split.y) {
        parent[v] = p.first_blue[v];
    }
    Ok(ArbOutcome::Feasible(Arborescence::from_parent_edges(g_s.base(), g_s.root(), parent)))
}

/// Minimum-weight α-colored arborescence for two colors in `O(m + n log n)`.
pub fn min_cc_rb_arb(g_s: &SpgGraph, alpha: &ColorConstraint) -> Result<ArbOutcome, ArbError> {
    check_two_colors(g_s)?;
    if let Some(reason) = preflight(g_s, alpha)? {
        return Ok(ArbOutcome::Infeasible(reason));
    }
    let needed = g_s.n().saturating_sub(1);
    if needed == 0 {
        return Ok(ArbOutcome::Feasible(trivial_tree(g_s)));
    }
    let budget = alpha.get(RED).saturating_add(alpha.get(BLUE));
    if budget < needed {
        return Ok(ArbOutcome::Infeasible(Infeasibility::BudgetBelowTreeSize { budget, needed }));
    }
    let p = RbPartition::compute(g_s);
    if let Some(reason) = forced_over_budget(&p, alpha) {
        return Ok(ArbOutcome::Infeasible(reason));
    }

    let r = |v: VertexId| p.min_red[v].map(|(w, _)| w).unwrap_or_default();
    let b = |v: VertexId| p.min_blue[v].map(|(w, _)| w).unwrap_or_default();
    let (v_r_prime, v_b_prime): (Vec<VertexId>, Vec<VertexId>) = p.v_rb.iter().partition(|&&v| r(v) <= b(v));

    let pick_cheapest = |candidates: &[VertexId], k: usize, penalty: &dyn Fn(VertexId) -> i128| {
        let mut order = candidates.to_vec();
        order.sort_by_key(|&v| (penalty(v), v));
        order.truncate(k);
        order
    };
    let swap = if p.v_r.len() + v_r_prime.len() > alpha.get(RED) {
        let k = p.v_r.len() + v_r_prime.len() - alpha.get(RED);
        if k > v_r_prime.len() {
            let slack = alpha.get(RED) - p.v_r.len() + alpha.get(BLUE) - p.v_b.len();
            return Ok(ArbOutcome::Infeasible(Infeasibility::SharedOverBudget { shared: p.v_rb.len(), slack }));
        }
        pick_cheapest(&v_r_prime, k, &|v| b(v) as i128 - r(v) as i128)
    } else if p.v_b.len() + v_b_prime.len() > alpha.get(BLUE) {
        let k = p.v_b.len() + v_b_prime.len() - alpha.get(BLUE);
        if k > v_b_prime.len() {
            let slack = alpha.get(RED) - p.v_r.len() + alpha.get(BLUE) - p.v_b.len();
            return Ok(ArbOutcome::Infeasible(Infeasibility::SharedOverBudget { shared: p.v_rb.len(), slack }));
        }
        pick_cheapest(&v_b_prime, k, &|v| r(v) as i128 - b(v) as i128)
    } else {
        Vec::new()
    };
    let split = MinRedBlueSplit { v_r_prime, v_b_prime, swap };

    // Membership in S flips a vertex of V'_R or V'_B to the other color.
    let mut swapped = vec![false; g_s.n()];
    for &v in &split.swap {
        swapped[v] = true;
    }
    let mut parent = vec![None; g_s.n()];
    let red_edge = |v: VertexId| p.min_red[v].map(|(_, id)| id);
    let blue_edge = |v: VertexId| p.min_blue[v].map(|(_, id)| id);
    for &v in &p.v_r {
        parent[v] = red_edge(v);
    }
    for &v in &p.v_b {
        parent[v] = blue_edge(v);
    }
    for &v in &split.v_r_prime {
        parent[v] = if swapped[v] { blue_edge(v) } else { red_edge(v) };
    }
    for &v in &split.v_b_prime {
        parent[v] = if swapped[v] { red_edge(v) } else { blue_edge(v) };
    }
    Ok(ArbOutcome::Feasible(Arborescence::from_parent_edges(g_s.base(), g_s.root(), parent)))
}
