//! Instance generators and brute-force oracles used to cross-check the
//! solvers. Everything here is exponential-time or test-oriented.

pub mod gen;
mod oracles;

pub use oracles::*;

use std::ops::RangeInclusive;

use rand::Rng;
use thiserror::Error;

use crate::graph::{ColorConstraint, ColoredDigraph, VertexId, Weight};
use crate::instance::print_instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{count} arborescences exceed the enumeration cap {cap}")]
    TooManyArborescences { count: u128, cap: u128 },
    #[error("brute force limited to n <= {limit}, got n = {n}")]
    InstanceTooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusInstance {
    pub graph: ColoredDigraph,
    pub source: VertexId,
    pub alpha: ColorConstraint,
    /// Seed the graph was generated from.
    pub seed: u64,
}

/// A reproducible batch of instances: regenerating with the same parameters
/// and seed gives identical instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub seed: u64,
    pub instances: Vec<CorpusInstance>,
}

impl Corpus {
    /// Random DAGs rooted at 0 with `n ∈ 1..=max_n`, `q ∈ 1..=max_q`, density
    /// in `[0.2, 0.8]`, weights drawn from `weights` and `Σα ∈ [n − 2, 2n]`.
    pub fn random_dags(seed: u64, count: usize, max_n: usize, max_q: usize, weights: RangeInclusive<Weight>) -> Self {
        Self::build(seed, count, |rng, graph_seed| {
            let n = rng.gen_range(1..=max_n);
            let q = rng.gen_range(1..=max_q);
            let density = rng.gen_range(0.2..0.8);
            (gen::gen_random_dag(n, q, density, weights.clone(), graph_seed), q)
        })
    }

    /// Like [`Corpus::random_dags`] but every instance has exactly `q` colors.
    pub fn random_dags_with_q(seed: u64, count: usize, max_n: usize, q: usize, weights: RangeInclusive<Weight>) -> Self {
        Self::build(seed, count, |rng, graph_seed| {
            let n = rng.gen_range(1..=max_n);
            let density = rng.gen_range(0.2..0.8);
            (gen::gen_random_dag(n, q, density, weights.clone(), graph_seed), q)
        })
    }

    /// Positive-weight digraphs (cycles allowed) in which 0 reaches every
    /// vertex; weights are small so shortest paths tie often.
    pub fn random_positive(seed: u64, count: usize, max_n: usize, max_q: usize) -> Self {
        Self::build(seed, count, |rng, graph_seed| {
            let n = rng.gen_range(1..=max_n);
            let q = rng.gen_range(1..=max_q);
            let density = rng.gen_range(0.1..0.5);
            (gen::gen_rooted_positive_digraph(n, q, density, 3, graph_seed), q)
        })
    }

    fn build(
        seed: u64,
        count: usize,
        mut make: impl FnMut(&mut rand_chacha::ChaCha8Rng, u64) -> (ColoredDigraph, usize),
    ) -> Self {
        let mut rng = gen::rng(seed);
        let instances = (0..count)
            .map(|_| {
                let graph_seed: u64 = rng.gen();
                let (graph, q) = make(&mut rng, graph_seed);
                let alpha = gen::gen_alpha(&mut rng, graph.n(), q);
                CorpusInstance { graph, source: 0, alpha, seed: graph_seed }
            })
            .collect();
        Self { seed, instances }
    }

    /// One instance file per corpus entry, in the CLI format, with the source
    /// and constraint recorded as comments.
    pub fn to_texts(&self) -> Vec<String> {
        self.instances
            .iter()
            .map(|i| format!("# seed {} source {} alpha {}\n{}", i.seed, i.source, i.alpha, print_instance(&i.graph, None)))
            .collect()
    }
}
