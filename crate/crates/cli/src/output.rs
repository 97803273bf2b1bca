use serde_json::{json, Map, Value};

use ccspt::arb::Arborescence;
use ccspt::instance::NameMap;
use ccspt::spg::CycleWitness;
use ccspt::{ColoredDigraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Feasible, yes, or verified.
    Ok,
    /// Infeasible, no, or verification failed.
    Negative,
}

/// A command's result in both renderings: `lines` for humans, `fields` for
/// the JSON summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub status: Status,
    pub lines: Vec<String>,
    pub fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, status: Status) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        Self { status, lines: Vec::new(), fields }
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    pub fn render(&self, json: bool, code: i32) -> String {
        if json {
            let mut fields = self.fields.clone();
            fields.insert("exit_code".into(), json!(code));
            let mut s = serde_json::to_string_pretty(&Value::Object(fields)).expect("serializable");
            s.push('\n');
            s
        } else {
            self.lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

/// Maps vertices of a (possibly restricted) graph back to labels of the
/// input file.
pub struct Labels<'a> {
    pub names: &'a NameMap,
    pub new_to_old: Option<&'a [VertexId]>,
}

impl Labels<'_> {
    pub fn get(&self, v: VertexId) -> String {
        let old = self.new_to_old.map_or(v, |map| map[v]);
        self.names.label(old)
    }
}

/// `t <vertex> <parent> <color> <weight>` per non-root vertex, then the
/// summary line; mirrored into the JSON fields.
pub fn write_tree(report: &mut Report, g: &ColoredDigraph, tree: &Arborescence, labels: &Labels<'_>) {
    let mut entries = Vec::new();
    for (v, id) in tree.tree_edges() {
        let e = g.edge(id).expect("tree edge belongs to the graph");
        report.line(format!("t {} {} {} {}", labels.get(v), labels.get(e.tail), e.color, e.weight));
        entries.push(json!({
            "vertex": labels.get(v),
            "parent": labels.get(e.tail),
            "edge": id,
            "color": e.color,
            "weight": e.weight,
        }));
    }
    let counts: Vec<String> = tree.color_counts.iter().map(|c| c.to_string()).collect();
    report.line(format!("s summary 1 {} {}", tree.total_weight, counts.join(" ")).trim_end().to_string());
    report.set("feasible", json!(true));
    report.set("root", json!(labels.get(tree.root)));
    report.set("total_weight", json!(tree.total_weight));
    report.set("color_counts", json!(tree.color_counts));
    report.set("tree", Value::Array(entries));
}

pub fn write_infeasible(report: &mut Report, reason: &str) {
    report.line(format!("c infeasible: {reason}"));
    report.line("s summary 0");
    report.set("feasible", json!(false));
    report.set("reason", json!(reason));
}

/// `w <tail> <head> <edge> <weight>` per cycle edge, then the cycle weight.
pub fn write_cycle(report: &mut Report, g: &ColoredDigraph, cycle: &CycleWitness, labels: &Labels<'_>) {
    let mut edges = Vec::new();
    for &id in &cycle.edges {
        let e = g.edge(id).expect("witness edge belongs to the graph");
        report.line(format!("w {} {} {} {}", labels.get(e.tail), labels.get(e.head), id, e.weight));
        edges.push(json!({ "tail": labels.get(e.tail), "head": labels.get(e.head), "edge": id, "weight": e.weight }));
    }
    let weight = cycle.weight_in(g);
    report.line(format!("c cycle weight {}", weight.map_or("?".to_string(), |w| w.to_string())));
    report.set(
        "witness",
        json!({
            "vertices": cycle.vertices.iter().map(|&v| labels.get(v)).collect::<Vec<_>>(),
            "edges": edges,
            "weight": weight,
        }),
    );
}
