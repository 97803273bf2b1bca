use std::io::Write;
use std::process::{Command, Stdio};

use ccspt_cli::{run, Output, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

const DIAMOND: &str = "p ccg 4 4 2\na 0 1 1 1\na 0 2 2 1\na 1 3 1 1\na 2 3 1 1\n";
const ZERO_CYCLE: &str = "p ccg 3 3 1\na 0 1 1 1\na 1 2 1 1\na 2 1 1 -1\n";

fn cli(args: &[&str], stdin: &str) -> Output {
    run(std::iter::once("ccspt").chain(args.iter().copied()), stdin)
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

#[test]
fn diamond_tree_and_summary() {
    let out = cli(&["cc-spt", "-", "--alpha", "2,1"], DIAMOND);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "t 1 0 1 1\nt 2 0 2 1\nt 3 1 1 1\ns summary 1 3 2 1\n");
}

#[test]
fn every_solver_agrees_on_the_diamond() {
    for solver in ["auto", "flow", "match", "rb"] {
        let out = cli(&["cc-arb", "-", "--alpha", "2,1", "--solver", solver, "--verify"], DIAMOND);
        assert_eq!(out.code, EXIT_OK, "{solver}: {}", out.stderr);
        assert_eq!(json(&cli(&["--json", "cc-arb", "-", "--alpha", "2,1", "--solver", solver], DIAMOND))["total_weight"], 3);
    }
}

#[test]
fn infeasible_budget_exits_one() {
    let out = cli(&["cc-spt", "-", "--alpha", "2,0"], DIAMOND);
    assert_eq!(out.code, EXIT_INFEASIBLE);
    assert!(out.stdout.ends_with("s summary 0\n"));
    let doc = json(&cli(&["--json", "cc-spt", "-", "--alpha", "2,0"], DIAMOND));
    assert_eq!(doc["feasible"], false);
    assert_eq!(doc["exit_code"], 1);
}

#[test]
fn cycles_exit_two_with_witness() {
    for command in ["cc-spt", "min-cc-spt", "cc-arb", "min-cc-arb"] {
        let out = cli(&["--json", command, "-", "--alpha", "3"], ZERO_CYCLE);
        assert_eq!(out.code, EXIT_INPUT, "{command}");
        let doc = json(&out);
        assert_eq!(doc["witness"]["weight"], 0);
        assert_eq!(doc["witness"]["edges"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn negative_cycle_is_an_input_error() {
    let text = "p ccg 3 3 1\na 0 1 1 1\na 1 2 1 1\na 2 1 1 -2\n";
    assert_eq!(cli(&["cc-spt", "-", "--alpha", "3"], text).code, EXIT_INPUT);
}

#[test]
fn restrict_reachable_keeps_original_labels() {
    let text = "p ccg 4 3 1\na 0 2 1 1\na 2 3 1 1\na 1 3 1 5\n";
    let out = cli(&["cc-spt", "-", "--alpha", "3"], text);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("vertex 1 is not reachable"));
    let out = cli(&["cc-spt", "-", "--alpha", "3", "--restrict-reachable"], text);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "t 2 0 1 1\nt 3 2 1 1\ns summary 1 2 2\n");
}

#[test]
fn named_vertices_and_scaled_weights() {
    let text = "p ccg 3 2 1\nc scale 10\nn 0 home\nn 2 work\na home 1 1 0.5\na 1 work 1 1.5\n";
    let out = cli(&["cc-spt", "-", "--source", "home", "--alpha", "2"], text);
    assert_eq!(out.stdout, "t 1 home 1 5\nt work 1 1 15\ns summary 1 20 2\n");
    let bad = "p ccg 2 1 1\nc scale 10\na 0 1 1 0.25\n";
    assert_eq!(cli(&["cc-spt", "-", "--alpha", "1"], bad).code, EXIT_INPUT);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(cli(&["cc-spt", "-", "--alpha", "1,1"], "p ccg 2 2 2\na 0 1 1 1\n").code, EXIT_INPUT);
    assert_eq!(cli(&["cc-spt", "-", "--alpha", "1"], DIAMOND).code, EXIT_INPUT);
    assert_eq!(cli(&["cc-spt", "-", "--alpha", "2,1", "--source", "9"], DIAMOND).code, EXIT_INPUT);
    assert_eq!(cli(&["cc-spt", "/no/such/file", "--alpha", "2,1"], "").code, EXIT_INPUT);
    assert_eq!(cli(&["cc-spt", "-", "--alpha", "2,1", "--solver", "simplex"], DIAMOND).code, EXIT_INPUT);
    assert_eq!(cli(&["min-cc-spt", "-", "--alpha", "2,1", "--solver", "match"], DIAMOND).code, EXIT_INPUT);
    assert_eq!(cli(&["--help"], "").code, EXIT_OK);
}

#[test]
fn shortest_path_decision() {
    let out = cli(&["cc-sp", "-", "--alpha", "1,1", "--target", "3"], DIAMOND);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "p 0 2 2 1\np 2 3 1 1\ns summary 1 2 1 1\n");
    assert_eq!(cli(&["cc-sp", "-", "--alpha", "1,0", "--target", "3"], DIAMOND).code, EXIT_INFEASIBLE);
}

#[test]
fn reductions_round_trip_through_files() {
    let out = cli(&["reduce", "cc-to-vcc", "-", "--alpha", "1,1", "--target", "3"], DIAMOND);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("# source 4 target 5 alpha 3,1 weight_scale 2\np vcc 6 6 2\n"));
    let vcc: String = out.stdout.lines().skip(1).map(|l| format!("{l}\n")).collect();
    let back = cli(&["reduce", "vcc-to-cc", "-", "--source", "4", "--alpha", "3,1", "--target", "5"], &vcc);
    assert_eq!(back.code, EXIT_OK, "{}", back.stderr);
    assert!(back.stdout.starts_with("# source 6 target 5 alpha 3,1\np ccg 7 7 2\n"));
}

#[test]
fn at_least_transform_prints_and_solves() {
    let out = cli(&["transform", "at-least", "-", "--alpha", "2,1"], DIAMOND);
    assert!(out.stdout.starts_with("# alpha 2,1,0\np ccg 4 8 3\n"));
    let solved = cli(&["transform", "at-least", "-", "--alpha", "2,1", "--source", "0"], DIAMOND);
    assert_eq!(solved.stdout, "t 1 0 1 1\nt 2 0 2 1\nt 3 1 1 1\ns summary 1 3 2 1\n");
    assert_eq!(cli(&["transform", "at-least", "-", "--alpha", "0,2", "--source", "0"], DIAMOND).code, EXIT_INFEASIBLE);
}

#[test]
fn verify_accepts_own_output_and_rejects_bad_trees() {
    let dir = std::env::temp_dir().join(format!("ccspt-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tree = dir.join("tree.txt");
    std::fs::write(&tree, cli(&["cc-spt", "-", "--alpha", "2,1"], DIAMOND).stdout).unwrap();
    let tree_arg = tree.to_str().unwrap();
    assert_eq!(cli(&["verify", "spt", "-", "--alpha", "2,1", "--tree", tree_arg], DIAMOND).code, EXIT_OK);
    assert_eq!(cli(&["verify", "arb", "-", "--alpha", "3,0", "--tree", tree_arg], DIAMOND).code, EXIT_INFEASIBLE);
    std::fs::write(&tree, "t 1 0 1 1\nt 2 0 2 1\nt 3 0 1 1\n").unwrap();
    let out = cli(&["verify", "arb", "-", "--alpha", "2,1", "--tree", tree_arg], DIAMOND);
    assert_eq!(out.code, EXIT_INFEASIBLE);
    assert!(out.stdout.contains("no edge 0 -> 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn generators_are_reproducible_and_parse() {
    let a = cli(&["gen", "dag", "--n", "6", "--q", "3", "--wmin", "-2", "--wmax", "4", "--seed", "9"], "");
    assert_eq!(a, cli(&["gen", "dag", "--n", "6", "--q", "3", "--wmin", "-2", "--wmax", "4", "--seed", "9"], ""));
    assert_eq!(cli(&["cc-arb", "-", "--alpha", "5,5,5"], &a.stdout).code, EXIT_OK);
    let p = cli(&["gen", "poscycle", "--n", "5", "--seed", "2"], "");
    assert!(p.stdout.starts_with("p ccg 5 "));
    let h = cli(&["gen", "hamiltonian", "--n", "4", "--seed", "3"], "");
    assert!(h.stdout.starts_with("# source 0 alpha 1,1,1,1\np ccg 5 "));
    assert_eq!(cli(&["gen", "dag", "--n", "3", "--density", "2"], "").code, EXIT_INPUT);
}

#[test]
fn corpus_cross_check_is_clean() {
    let out = cli(&["corpus", "--count", "60", "--workers", "3", "--seed", "4"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(out.stdout, "s corpus 60 0 4\n");
}

#[test]
fn binary_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ccspt"))
        .args(["cc-spt", "-", "--alpha", "2,0"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(DIAMOND.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INFEASIBLE));
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("s summary 0\n"));
}
