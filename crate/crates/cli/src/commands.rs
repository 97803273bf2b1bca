use std::fs;
use std::path::Path;

use serde_json::json;

use ccspt::arb::{verify_arborescence, ArbOutcome, Arborescence};
use ccspt::graph::{ColorConstraint, ColoredDigraph, EdgeId, VertexId};
use ccspt::instance::{parse_instance, parse_vcc_instance, print_instance, print_vcc_instance, InstanceFile, NameMap};
use ccspt::reductions::{cc_sp_decide, cc_to_vcc, vcc_to_cc, CcSpAnswer, CcSpInstance, VccSpInstance};
use ccspt::spg::{SpgError, SpgGraph};
use ccspt::spt::{
    at_least_transform, cc_spt_with, min_cc_spt_with, solve_arb, verify_spt, SptError, SptOptions, SptOutcome,
};
use ccspt::testkit::{self, gen, Corpus};

use crate::args::{
    AtLeastArgs, Command, CorpusArgs, GenCommand, InstanceArgs, PathArgs, ReduceCommand, SolveArgs, TransformCommand,
    VerifyArgs, VerifyCommand,
};
use crate::output::{write_cycle, write_infeasible, write_tree, Labels, Report, Status};
use crate::CliError;

pub fn dispatch(command: Command, stdin: &str) -> Result<Report, CliError> {
    match command {
        Command::CcSpt(a) => solve_spt(&a, stdin, false),
        Command::MinCcSpt(a) => solve_spt(&a, stdin, true),
        Command::CcArb(a) => solve_dag(&a, stdin, false),
        Command::MinCcArb(a) => solve_dag(&a, stdin, true),
        Command::CcSp(a) => cc_sp(&a, stdin),
        Command::Reduce { direction } => match direction {
            ReduceCommand::VccToCc(a) => reduce_vcc_to_cc(&a, stdin),
            ReduceCommand::CcToVcc(a) => reduce_cc_to_vcc(&a, stdin),
        },
        Command::Transform { kind: TransformCommand::AtLeast(a) } => at_least(&a, stdin),
        Command::Gen { kind } => generate(kind),
        Command::Verify { kind } => match kind {
            VerifyCommand::Arb(a) => verify(&a, stdin, false),
            VerifyCommand::Spt(a) => verify(&a, stdin, true),
        },
        Command::Corpus(a) => corpus(&a),
    }
}

fn read_text(path: &Path, stdin: &str) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        return Ok(stdin.to_string());
    }
    fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, stdin: &str) -> Result<InstanceFile, CliError> {
    parse_instance(&read_text(path, stdin)?).map_err(|e| CliError::input(e.to_string()))
}

fn vertex(names: &NameMap, token: &str) -> Result<VertexId, CliError> {
    names.resolve(token).ok_or_else(|| CliError::input(format!("unknown vertex `{token}`")))
}

fn alpha(text: &str, q: usize) -> Result<ColorConstraint, CliError> {
    let a: ColorConstraint = text.parse().map_err(|e: ccspt::graph::ConstraintError| CliError::input(e.to_string()))?;
    a.check_len(q).map_err(|e| CliError::input(e.to_string()))?;
    Ok(a)
}

/// The instance, the root, and the constraint, optionally restricted to the
/// vertices reachable from the root.
struct Prepared {
    file: InstanceFile,
    graph: ColoredDigraph,
    source: VertexId,
    alpha: ColorConstraint,
    new_to_old: Option<Vec<VertexId>>,
}

impl Prepared {
    fn new(a: &InstanceArgs, stdin: &str, restrict: bool) -> Result<Self, CliError> {
        let file = load(&a.file, stdin)?;
        let source = vertex(&file.names, &a.source)?;
        let alpha = alpha(&a.alpha, file.graph.q())?;
        let (graph, source, new_to_old) = if restrict {
            let reach = file.graph.reachable_from(source);
            let keep: Vec<VertexId> = (0..file.graph.n()).filter(|&v| reach[v]).collect();
            let (h, renum) = file.graph.restrict_to(&keep);
            let s = renum.old_to_new[source].expect("source reaches itself");
            (h, s, Some(renum.new_to_old))
        } else {
            (file.graph.clone(), source, None)
        };
        Ok(Self { file, graph, source, alpha, new_to_old })
    }

    fn labels(&self) -> Labels<'_> {
        Labels { names: &self.file.names, new_to_old: self.new_to_old.as_deref() }
    }
}

fn cycle_error(p: &Prepared, command: &str, message: String, cycle: &ccspt::spg::CycleWitness) -> CliError {
    let mut report = Report::new(command, Status::Negative);
    report.set("error", json!(message));
    write_cycle(&mut report, &p.graph, cycle, &p.labels());
    CliError::Input { message, report: Some(report) }
}

fn solve_spt(a: &SolveArgs, stdin: &str, minimize: bool) -> Result<Report, CliError> {
    let command = if minimize { "min-cc-spt" } else { "cc-spt" };
    let p = Prepared::new(&a.instance, stdin, a.restrict_reachable)?;
    let opts = SptOptions { solver: a.solver, ..Default::default() };
    let result = if minimize {
        min_cc_spt_with(&p.graph, p.source, &p.alpha, &opts)
    } else {
        cc_spt_with(&p.graph, p.source, &p.alpha, &opts)
    };
    match result {
        Ok(SptOutcome::Feasible(r)) => {
            if a.verify {
                let check = verify_spt(&p.graph, p.source, &r.tree, &p.alpha);
                if !check.is_ok() {
                    return Err(CliError::Internal(format!("produced tree fails verification: {:?}", check.violations)));
                }
            }
            let mut report = Report::new(command, Status::Ok);
            write_tree(&mut report, &p.graph, &r.tree, &p.labels());
            report.set("solver", json!(r.solver_used.to_string()));
            report.set("spg_edge_count", json!(r.spg_edge_count));
            if let Some(stats) = r.phase_stats {
                report.set("phases", json!(stats.phases));
            }
            Ok(report)
        }
        Ok(SptOutcome::Infeasible { reason, solver_used }) => {
            let mut report = Report::new(command, Status::Negative);
            write_infeasible(&mut report, &format!("{reason:?}"));
            report.set("solver", json!(solver_used.to_string()));
            Ok(report)
        }
        Err(SptError::Spg(SpgError::NonPositiveCycle { cycle })) => {
            let message = "zero-weight cycle on shortest paths; refusing to solve".to_string();
            Err(cycle_error(&p, command, message, &cycle))
        }
        Err(e) => Err(CliError::input(e.to_string())),
    }
}

fn solve_dag(a: &SolveArgs, stdin: &str, minimize: bool) -> Result<Report, CliError> {
    let command = if minimize { "min-cc-arb" } else { "cc-arb" };
    let p = Prepared::new(&a.instance, stdin, a.restrict_reachable)?;
    let g_s = match SpgGraph::from_dag(&p.graph, p.source) {
        Ok(g_s) => g_s,
        Err(SpgError::NotAcyclic { cycle }) => {
            return Err(cycle_error(&p, command, "input is not a DAG".to_string(), &cycle));
        }
        Err(e) => return Err(CliError::input(e.to_string())),
    };
    let (outcome, used, stats) =
        solve_arb(&g_s, &p.alpha, a.solver, minimize).map_err(|e| CliError::input(e.to_string()))?;
    let mut report = match outcome {
        ArbOutcome::Feasible(tree) => {
            if a.verify {
                let check = verify_arborescence(&p.graph, p.source, &tree, &p.alpha);
                if !check.is_ok() {
                    return Err(CliError::Internal(format!("produced tree fails verification: {:?}", check.violations)));
                }
            }
            let mut report = Report::new(command, Status::Ok);
            write_tree(&mut report, &p.graph, &tree, &p.labels());
            report
        }
        ArbOutcome::Infeasible(reason) => {
            let mut report = Report::new(command, Status::Negative);
            write_infeasible(&mut report, &format!("{reason:?}"));
            report
        }
    };
    report.set("solver", json!(used.to_string()));
    if let Some(stats) = stats {
        report.set("phases", json!(stats.phases));
    }
    Ok(report)
}

fn cc_sp(a: &PathArgs, stdin: &str) -> Result<Report, CliError> {
    let p = Prepared::new(&a.instance, stdin, false)?;
    let t = vertex(&p.file.names, &a.target)?;
    let instance = CcSpInstance { graph: p.graph.clone(), s: p.source, t, alpha: p.alpha.clone() };
    let labels = p.labels();
    match cc_sp_decide(&instance).map_err(|e| CliError::input(e.to_string()))? {
        CcSpAnswer::Yes { path, weight } => {
            let mut report = Report::new("cc-sp", Status::Ok);
            let mut counts = vec![0usize; p.graph.q()];
            for &id in &path {
                let e = p.graph.edge(id).expect("path edge");
                counts[e.color - 1] += 1;
                report.line(format!("p {} {} {} {}", labels.get(e.tail), labels.get(e.head), e.color, e.weight));
            }
            let counts_text: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            report.line(format!("s summary 1 {weight} {}", counts_text.join(" ")).trim_end().to_string());
            report.set("feasible", json!(true));
            report.set("path", json!(path));
            report.set("total_weight", json!(weight));
            report.set("color_counts", json!(counts));
            Ok(report)
        }
        CcSpAnswer::No => {
            let mut report = Report::new("cc-sp", Status::Negative);
            write_infeasible(&mut report, "no shortest path within the color budget");
            Ok(report)
        }
    }
}

fn reduce_vcc_to_cc(a: &PathArgs, stdin: &str) -> Result<Report, CliError> {
    let vg = parse_vcc_instance(&read_text(&a.instance.file, stdin)?).map_err(|e| CliError::input(e.to_string()))?;
    let names = NameMap::new(vg.n);
    let s = vertex(&names, &a.instance.source)?;
    let t = vertex(&names, &a.target)?;
    let alpha = alpha(&a.instance.alpha, vg.q)?;
    let (out, _) = vcc_to_cc(&VccSpInstance { graph: vg, s, t, alpha }).map_err(|e| CliError::input(e.to_string()))?;
    let text = print_instance(&out.graph, None);
    let mut report = Report::new("reduce vcc-to-cc", Status::Ok);
    report.line(format!("# source {} target {} alpha {}", out.s, out.t, out.alpha));
    report.lines.extend(text.lines().map(str::to_string));
    report.set("source", json!(out.s));
    report.set("target", json!(out.t));
    report.set("alpha", json!(out.alpha.as_slice()));
    report.set("instance", json!(text));
    Ok(report)
}

fn reduce_cc_to_vcc(a: &PathArgs, stdin: &str) -> Result<Report, CliError> {
    let p = Prepared::new(&a.instance, stdin, false)?;
    let t = vertex(&p.file.names, &a.target)?;
    let instance = CcSpInstance { graph: p.graph.clone(), s: p.source, t, alpha: p.alpha.clone() };
    let (out, _) = cc_to_vcc(&instance).map_err(|e| CliError::input(e.to_string()))?;
    let text = print_vcc_instance(&out.graph);
    let mut report = Report::new("reduce cc-to-vcc", Status::Ok);
    report.line(format!("# source {} target {} alpha {} weight_scale 2", out.s, out.t, out.alpha));
    report.lines.extend(text.lines().map(str::to_string));
    report.set("source", json!(out.s));
    report.set("target", json!(out.t));
    report.set("alpha", json!(out.alpha.as_slice()));
    report.set("weight_scale", json!(2));
    report.set("instance", json!(text));
    Ok(report)
}

fn at_least(a: &AtLeastArgs, stdin: &str) -> Result<Report, CliError> {
    let file = load(&a.file, stdin)?;
    let lower = alpha(&a.alpha, file.graph.q())?;
    let tr = at_least_transform(&file.graph, &lower).map_err(|e| CliError::input(e.to_string()))?;
    let Some(source) = &a.source else {
        let text = print_instance(&tr.graph, Some(&file.names));
        let mut report = Report::new("transform at-least", Status::Ok);
        report.line(format!("# alpha {}", tr.alpha));
        report.lines.extend(text.lines().map(str::to_string));
        report.set("alpha", json!(tr.alpha.as_slice()));
        report.set("instance", json!(text));
        return Ok(report);
    };
    let s = vertex(&file.names, source)?;
    let labels = Labels { names: &file.names, new_to_old: None };
    match cc_spt_with(&tr.graph, s, &tr.alpha, &SptOptions::default()) {
        Ok(SptOutcome::Feasible(r)) => {
            let tree = tr.pull_back(&file.graph, &r.tree);
            let mut report = Report::new("transform at-least", Status::Ok);
            write_tree(&mut report, &file.graph, &tree, &labels);
            Ok(report)
        }
        Ok(SptOutcome::Infeasible { reason, .. }) => {
            let mut report = Report::new("transform at-least", Status::Negative);
            write_infeasible(&mut report, &format!("{reason:?}"));
            Ok(report)
        }
        Err(e) => Err(CliError::input(e.to_string())),
    }
}

fn generate(kind: GenCommand) -> Result<Report, CliError> {
    let check_density = |d: f64| {
        if (0.0..=1.0).contains(&d) {
            Ok(())
        } else {
            Err(CliError::input(format!("density {d} outside [0, 1]")))
        }
    };
    let (graph, header) = match kind {
        GenCommand::Dag { n, q, density, wmin, wmax, seed } => {
            check_density(density)?;
            if wmin > wmax || q == 0 && n > 1 {
                return Err(CliError::input("need wmin <= wmax and at least one color"));
            }
            (gen::gen_random_dag(n, q, density, wmin..=wmax, seed), None)
        }
        GenCommand::Poscycle { n, q, density, seed } => {
            check_density(density)?;
            if q == 0 && n > 1 {
                return Err(CliError::input("need at least one color"));
            }
            (gen::gen_random_positive_cycle_digraph(n, q, density, seed), None)
        }
        GenCommand::Hamiltonian { n, density, source, seed } => {
            check_density(density)?;
            if n == 0 || source >= n {
                return Err(CliError::input("need n >= 1 and source < n"));
            }
            let arcs = gen::gen_random_uncolored_digraph(n, density, seed);
            let (g, s, a) = gen::gen_hamiltonian_gadget(n, &arcs, source);
            (g, Some(format!("# source {s} alpha {a}")))
        }
    };
    let text = print_instance(&graph, None);
    let mut report = Report::new("gen", Status::Ok);
    report.lines.extend(header);
    report.lines.extend(text.lines().map(str::to_string));
    report.set("instance", json!(text));
    Ok(report)
}

/// Parses `t <vertex> <parent> <color> <weight>` lines into parent edges,
/// picking the smallest-id matching edge. Problems become report lines.
fn read_tree(
    text: &str,
    g: &ColoredDigraph,
    names: &NameMap,
    problems: &mut Vec<String>,
) -> Result<Vec<Option<EdgeId>>, CliError> {
    let mut parent = vec![None; g.n()];
    for (i, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.first() != Some(&"t") {
            continue;
        }
        let bad = || CliError::input(format!("tree line {}: expected `t <vertex> <parent> <color> <weight>`", i + 1));
        if toks.len() != 5 {
            return Err(bad());
        }
        let v = vertex(names, toks[1])?;
        let u = vertex(names, toks[2])?;
        let color: usize = toks[3].parse().map_err(|_| bad())?;
        let weight: i64 = toks[4].parse().map_err(|_| bad())?;
        let found = g.edges().iter().find(|e| e.tail == u && e.head == v && e.color == color && e.weight == weight);
        match found {
            None => problems.push(format!("tree line {}: no edge {u} -> {v} of color {color} and weight {weight}", i + 1)),
            Some(e) => {
                if parent[v].replace(e.original_index).is_some() {
                    problems.push(format!("vertex {v} has more than one parent line"));
                }
            }
        }
    }
    Ok(parent)
}

fn verify(a: &VerifyArgs, stdin: &str, spt: bool) -> Result<Report, CliError> {
    let command = if spt { "verify spt" } else { "verify arb" };
    let p = Prepared::new(&a.instance, stdin, false)?;
    let tree_text = read_text(&a.tree, stdin)?;
    let mut problems = Vec::new();
    let parent = read_tree(&tree_text, &p.graph, &p.file.names, &mut problems)?;
    let tree = Arborescence::from_parent_edges(&p.graph, p.source, parent);
    if spt {
        problems.extend(verify_spt(&p.graph, p.source, &tree, &p.alpha).violations.iter().map(|v| v.to_string()));
    } else {
        problems.extend(verify_arborescence(&p.graph, p.source, &tree, &p.alpha).violations.iter().map(|v| v.to_string()));
    }
    let status = if problems.is_empty() { Status::Ok } else { Status::Negative };
    let mut report = Report::new(command, status);
    for problem in &problems {
        report.line(format!("c violation: {problem}"));
    }
    report.line(format!("s verify {}", u8::from(problems.is_empty())));
    report.set("ok", json!(problems.is_empty()));
    report.set("violations", json!(problems));
    Ok(report)
}

fn corpus(a: &CorpusArgs) -> Result<Report, CliError> {
    let workers = a.workers.max(1);
    let corpus = Corpus::random_dags(a.seed, a.count, 8, 4, -5..=20);
    let chunk = corpus.instances.len().div_ceil(workers).max(1);
    let mismatches: Vec<String> = std::thread::scope(|scope| {
        let handles: Vec<_> = corpus
            .instances
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().filter_map(check_instance).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    let status = if mismatches.is_empty() { Status::Ok } else { Status::Negative };
    let mut report = Report::new("corpus", status);
    for m in &mismatches {
        report.line(format!("c mismatch: {m}"));
    }
    report.line(format!("s corpus {} {} {}", a.count, mismatches.len(), a.seed));
    report.set("instances", json!(a.count));
    report.set("mismatches", json!(mismatches));
    Ok(report)
}

/// Compares every applicable solver with brute force on one instance.
fn check_instance(inst: &testkit::CorpusInstance) -> Option<String> {
    use ccspt::spt::Solver;
    let g_s = SpgGraph::from_dag(&inst.graph, inst.source).ok()?;
    let oracle_feasible = testkit::brute_cc_arb(&g_s, &inst.alpha).ok()?.is_some();
    let oracle_weight = testkit::brute_min_cc_arb(&g_s, &inst.alpha).ok()?;
    let mut solvers = vec![Solver::Flow, Solver::Match];
    if inst.graph.q() == 2 {
        solvers.push(Solver::Rb);
    }
    for solver in solvers {
        let (out, ..) = solve_arb(&g_s, &inst.alpha, solver, false).ok()?;
        if out.is_feasible() != oracle_feasible {
            return Some(format!("seed {}: {solver} decision differs", inst.seed));
        }
        if solver != Solver::Match {
            let (out, ..) = solve_arb(&g_s, &inst.alpha, solver, true).ok()?;
            if out.tree().map(|t| t.total_weight) != oracle_weight {
                return Some(format!("seed {}: {solver} minimum weight differs", inst.seed));
            }
        }
    }
    None
}
