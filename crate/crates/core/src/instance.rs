//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! p ccg <n> <m> <q>
//! c scale <k>          optional: decimal weights are multiplied by k
//! c undirected         optional: each edge line becomes two opposite edges
//! n <id> <name>        optional vertex names, usable in place of ids
//! a <tail> <head> <color> <weight>
//! ```
//!
//! Vertex-colored graphs use `p vcc <n> <m> <q>`, `v <vertex> <color>` and
//! `a <tail> <head> <weight>`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Color, ColoredDigraph, ValidationError, VertexId, Weight};
use crate::reductions::VertexColoredDigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: weight `{value}` is not a whole number of 1/{scale} units")]
    Precision { line: usize, value: String, scale: i64 },
    #[error("invalid graph: {0}")]
    Invalid(#[from] ValidationError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Optional human-readable vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NameMap {
    names: Vec<Option<String>>,
    by_name: HashMap<String, VertexId>,
}

impl NameMap {
    pub fn new(n: usize) -> Self {
        Self { names: vec![None; n], by_name: HashMap::new() }
    }

    pub fn insert(&mut self, v: VertexId, name: String) {
        self.by_name.insert(name.clone(), v);
        self.names[v] = Some(name);
    }

    /// A declared name, or else a plain integer id below `n`.
    pub fn resolve(&self, token: &str) -> Option<VertexId> {
        if let Some(&v) = self.by_name.get(token) {
            return Some(v);
        }
        token.parse::<VertexId>().ok().filter(|&v| v < self.names.len())
    }

    /// The vertex's name if it has one, else its id.
    pub fn label(&self, v: VertexId) -> String {
        match self.names.get(v) {
            Some(Some(name)) => name.clone(),
            _ => v.to_string(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &str)> {
        self.names.iter().enumerate().filter_map(|(v, n)| n.as_deref().map(|n| (v, n)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: ColoredDigraph,
    pub names: NameMap,
    pub scale: i64,
    pub undirected: bool,
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
}

impl<'a> Lines<'a> {
    /// Tokenized non-blank, non-`#` lines with 1-based line numbers.
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, toks)| !toks.is_empty() && !toks[0].starts_with('#'))
            .collect();
        Self { lines }
    }

    fn header(&self, kind: &str) -> Result<(usize, usize, usize), ParseError> {
        let Some((line, toks)) = self.lines.first() else {
            return Err(syntax(1, "missing `p` header"));
        };
        if toks.len() != 5 || toks[0] != "p" || toks[1] != kind {
            return Err(syntax(*line, format!("expected `p {kind} <n> <m> <q>`")));
        }
        let num = |t: &str| t.parse::<usize>().map_err(|_| syntax(*line, format!("bad number `{t}`")));
        Ok((num(toks[2])?, num(toks[3])?, num(toks[4])?))
    }
}

fn parse_count(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| syntax(line, format!("bad {what} `{token}`")))
}

/// Parses a decimal weight and multiplies it by `scale`, failing unless the
/// result is an exact integer that fits in 64 bits.
pub fn parse_scaled_weight(line: usize, token: &str, scale: i64) -> Result<Weight, ParseError> {
    let bad = || syntax(line, format!("bad weight `{token}`"));
    let (negative, digits) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let frac_digits = frac_part.trim_end_matches('0');
    if frac_digits.len() > 30 || int_part.len() > 30 {
        return Err(bad());
    }
    let int_value: i128 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
    let frac_value: i128 = if frac_digits.is_empty() { 0 } else { frac_digits.parse().map_err(|_| bad())? };
    let denom = 10i128.checked_pow(frac_digits.len() as u32).ok_or_else(bad)?;
    let scaled_frac = frac_value.checked_mul(scale as i128).ok_or_else(bad)?;
    if scaled_frac % denom != 0 {
        return Err(ParseError::Precision { line, value: token.to_string(), scale });
    }
    let magnitude = int_value.checked_mul(scale as i128).and_then(|v| v.checked_add(scaled_frac / denom)).ok_or_else(bad)?;
    let value = if negative { -magnitude } else { magnitude };
    Weight::try_from(value).map_err(|_| syntax(line, format!("weight `{token}` overflows 64 bits")))
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let lines = Lines::new(text);
    let (n, m, q) = lines.header("ccg")?;
    let mut names = NameMap::new(n);
    let mut scale = 1i64;
    let mut undirected = false;
    // First pass: options and names, so edges may refer to names declared later.
    for (line, toks) in &lines.lines[1..] {
        match toks[0] {
            "c" if toks.get(1) == Some(&"scale") => {
                let k = toks.get(2).and_then(|t| t.parse::<i64>().ok()).filter(|&k| k > 0);
                scale = k.ok_or_else(|| syntax(*line, "expected `c scale <positive integer>`"))?;
            }
            "c" if toks.get(1) == Some(&"undirected") => undirected = true,
            "n" => {
                if toks.len() != 3 {
                    return Err(syntax(*line, "expected `n <id> <name>`"));
                }
                let v = parse_count(*line, toks[1], "vertex id")?;
                if v >= n {
                    return Err(syntax(*line, format!("vertex id {v} out of range")));
                }
                names.insert(v, toks[2].to_string());
            }
            "c" | "a" => {}
            other => return Err(syntax(*line, format!("unknown line type `{other}`"))),
        }
    }
    let mut edges = Vec::with_capacity(m);
    for (line, toks) in &lines.lines[1..] {
        if toks[0] != "a" {
            continue;
        }
        if toks.len() != 5 {
            return Err(syntax(*line, "expected `a <tail> <head> <color> <weight>`"));
        }
        let vertex = |t: &str| names.resolve(t).ok_or_else(|| syntax(*line, format!("unknown vertex `{t}`")));
        let (u, v) = (vertex(toks[1])?, vertex(toks[2])?);
        let color: Color = parse_count(*line, toks[3], "color")?;
        let w = parse_scaled_weight(*line, toks[4], scale)?;
        if undirected && w < 0 {
            return Err(syntax(*line, "negative weight in an undirected graph would form a negative cycle"));
        }
        edges.push((u, v, color, w));
    }
    if edges.len() != m {
        let line = lines.lines.last().map_or(1, |(l, _)| *l);
        return Err(syntax(line, format!("header declares {m} edges, found {}", edges.len())));
    }
    let expanded: Vec<_> = if undirected {
        edges.iter().flat_map(|&(u, v, c, w)| [(u, v, c, w), (v, u, c, w)]).collect()
    } else {
        edges
    };
    let graph = ColoredDigraph::from_edges(n, q, expanded)?;
    Ok(InstanceFile { graph, names, scale, undirected })
}

/// Prints `g` with integer weights; parsing the result gives back `g`.
pub fn print_instance(g: &ColoredDigraph, names: Option<&NameMap>) -> String {
    let mut out = String::new();
    writeln!(out, "p ccg {} {} {}", g.n(), g.m(), g.q()).unwrap();
    if let Some(names) = names {
        for (v, name) in names.iter() {
            writeln!(out, "n {v} {name}").unwrap();
        }
    }
    for e in g.edges() {
        writeln!(out, "a {} {} {} {}", e.tail, e.head, e.color, e.weight).unwrap();
    }
    out
}

pub fn parse_vcc_instance(text: &str) -> Result<VertexColoredDigraph, ParseError> {
    let lines = Lines::new(text);
    let (n, m, q) = lines.header("vcc")?;
    let mut colors: Vec<Option<Color>> = vec![None; n];
    let mut edges = Vec::with_capacity(m);
    for (line, toks) in &lines.lines[1..] {
        match (toks[0], toks.len()) {
            ("v", 3) => {
                let v = parse_count(*line, toks[1], "vertex id")?;
                let c = parse_count(*line, toks[2], "color")?;
                if v >= n {
                    return Err(syntax(*line, format!("vertex id {v} out of range")));
                }
                if c == 0 || c > q {
                    return Err(syntax(*line, format!("color {c} out of range 1..={q}")));
                }
                colors[v] = Some(c);
            }
            ("a", 4) => {
                let u = parse_count(*line, toks[1], "vertex id")?;
                let v = parse_count(*line, toks[2], "vertex id")?;
                if u >= n || v >= n || u == v {
                    return Err(syntax(*line, format!("bad edge ({u}, {v})")));
                }
                edges.push((u, v, parse_scaled_weight(*line, toks[3], 1)?));
            }
            ("c", _) => {}
            _ => return Err(syntax(*line, "expected `v <vertex> <color>` or `a <tail> <head> <weight>`")),
        }
    }
    if edges.len() != m {
        return Err(syntax(lines.lines.last().map_or(1, |(l, _)| *l), format!("header declares {m} edges, found {}", edges.len())));
    }
    let vertex_color = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| syntax(1, format!("vertex {v} has no color"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VertexColoredDigraph { n, q, vertex_color, edges })
}

pub fn print_vcc_instance(g: &VertexColoredDigraph) -> String {
    let mut out = String::new();
    writeln!(out, "p vcc {} {} {}", g.n, g.edges.len(), g.q).unwrap();
    for (v, c) in g.vertex_color.iter().enumerate() {
        writeln!(out, "v {v} {c}").unwrap();
    }
    for &(u, v, w) in &g.edges {
        writeln!(out, "a {u} {v} {w}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::gen::gen_random_positive_cycle_digraph;
    use proptest::prelude::*;

    #[test]
    fn decimal_weight_is_scaled() {
        let f = parse_instance("p ccg 2 1 1\nc scale 10\na 0 1 1 1.5\n").unwrap();
        assert_eq!(f.graph.edges()[0].weight, 15);
    }

    #[test]
    fn edge_count_mismatch_is_a_parse_error() {
        assert!(matches!(parse_instance("p ccg 2 2 1\na 0 1 1 1\n"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn excess_precision_is_rejected() {
        let err = parse_instance("p ccg 2 1 1\nc scale 10\na 0 1 1 1.25\n").unwrap_err();
        assert!(matches!(err, ParseError::Precision { line: 3, .. }));
    }

    #[test]
    fn scaled_weight_edge_cases() {
        assert_eq!(parse_scaled_weight(1, "-2.50", 2), Ok(-5));
        assert_eq!(parse_scaled_weight(1, ".5", 4), Ok(2));
        assert_eq!(parse_scaled_weight(1, "7", 1), Ok(7));
        assert!(parse_scaled_weight(1, "1e3", 1).is_err());
        assert!(parse_scaled_weight(1, "-", 1).is_err());
        assert!(parse_scaled_weight(1, "99999999999999999999", 1).is_err());
    }

    #[test]
    fn names_resolve_even_when_declared_after_use() {
        let f = parse_instance("p ccg 2 1 1\na s t 1 3\nn 0 s\nn 1 t\n").unwrap();
        assert_eq!((f.graph.edges()[0].tail, f.graph.edges()[0].head), (0, 1));
        assert_eq!(f.names.label(1), "t");
        let again = parse_instance(&print_instance(&f.graph, Some(&f.names))).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn undirected_doubles_edges_and_rejects_negative_weights() {
        let f = parse_instance("p ccg 2 1 1\nc undirected\na 0 1 1 4\n").unwrap();
        assert_eq!(f.graph.m(), 2);
        assert_eq!((f.graph.edges()[1].tail, f.graph.edges()[1].head), (1, 0));
        assert!(parse_instance("p ccg 2 1 1\nc undirected\na 0 1 1 -4\n").is_err());
    }

    #[test]
    fn invalid_graph_surfaces_validation_error() {
        assert!(matches!(parse_instance("p ccg 2 1 1\na 0 0 1 1\n"), Err(ParseError::Invalid(_))));
        assert!(matches!(parse_instance("p ccg 2 1 1\na 0 1 2 1\n"), Err(ParseError::Invalid(_))));
    }

    #[test]
    fn missing_header_and_unknown_vertex() {
        assert!(parse_instance("a 0 1 1 1\n").is_err());
        assert!(parse_instance("").is_err());
        assert!(parse_instance("p ccg 2 1 1\na 0 x 1 1\n").is_err());
    }

    #[test]
    fn vcc_round_trip() {
        let text = "p vcc 3 2 2\nv 0 1\nv 1 2\nv 2 1\na 0 1 4\na 1 2 -1\n";
        let g = parse_vcc_instance(text).unwrap();
        assert_eq!(print_vcc_instance(&g), text);
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(n in 1usize..9, q in 1usize..4, seed: u64) {
            let g = gen_random_positive_cycle_digraph(n, q, 0.4, seed);
            prop_assert_eq!(parse_instance(&print_instance(&g, None)).unwrap().graph, g);
        }
    }
}
