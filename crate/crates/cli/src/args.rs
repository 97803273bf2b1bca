use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use ccspt::spt::Solver;

#[derive(Debug, Parser)]
#[command(name = "ccspt", version, about = "Color-constrained shortest path trees and arborescences")]
pub struct Cli {
    /// Print a single JSON summary document instead of line output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// α-colored shortest path tree.
    CcSpt(SolveArgs),
    /// Minimum-weight α-colored shortest path tree.
    MinCcSpt(SolveArgs),
    /// α-colored arborescence of a DAG.
    CcArb(SolveArgs),
    /// Minimum-weight α-colored arborescence of a DAG.
    MinCcArb(SolveArgs),
    /// Is some shortest source-target path within the color budget?
    CcSp(PathArgs),
    /// Translate between vertex- and edge-colored constrained path instances.
    Reduce {
        #[command(subcommand)]
        direction: ReduceCommand,
    },
    /// Instance transforms.
    Transform {
        #[command(subcommand)]
        kind: TransformCommand,
    },
    /// Generate random instances.
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
    },
    /// Check a tree file against an instance.
    Verify {
        #[command(subcommand)]
        kind: VerifyCommand,
    },
    /// Cross-check the solvers against brute force on a seeded random corpus.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance file; `-` reads standard input.
    pub file: PathBuf,
    /// Root vertex (id or declared name).
    #[arg(long, default_value = "0")]
    pub source: String,
    /// Per-color bounds, e.g. `2,1`.
    #[arg(long)]
    pub alpha: String,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value = "auto", value_parser = parse_solver)]
    pub solver: Solver,
    /// Drop vertices unreachable from the source before solving.
    #[arg(long)]
    pub restrict_reachable: bool,
    /// Re-check the produced tree with the independent verifier.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub target: String,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Vertex-colored instance (`p vcc`) to edge-colored instance.
    VccToCc(PathArgs),
    /// Edge-colored instance to vertex-colored instance (line graph).
    CcToVcc(PathArgs),
}

#[derive(Debug, Subcommand)]
pub enum TransformCommand {
    /// Rewrite "at least α_i edges of color i" as upper bounds on a graph with one extra color.
    AtLeast(AtLeastArgs),
}

#[derive(Debug, Args)]
pub struct AtLeastArgs {
    pub file: PathBuf,
    /// Per-color lower bounds.
    #[arg(long)]
    pub alpha: String,
    /// Also solve from this root and print the tree mapped back to the input graph.
    #[arg(long)]
    pub source: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Random DAG rooted at 0.
    Dag {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        wmin: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        wmax: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random digraph with positive weights (cycles allowed).
    Poscycle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hardness gadget built from a random digraph.
    Hamiltonian {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        source: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Check that the tree is an α-colored arborescence.
    Arb(VerifyArgs),
    /// Additionally check that every tree path is a shortest path.
    Spt(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Tree file with `t <vertex> <parent> <color> <weight>` lines.
    #[arg(long)]
    pub tree: PathBuf,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    /// Worker threads; each owns a slice of the corpus.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

fn parse_solver(s: &str) -> Result<Solver, String> {
    s.parse()
}
