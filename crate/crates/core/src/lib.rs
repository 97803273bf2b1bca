//! Color-constrained arborescences and shortest path trees in edge-colored
//! digraphs.
//!
//! The usual entry points are [`spt::cc_spt`] and [`spt::min_cc_spt`], which
//! compute distances, keep the tight edges, and pick one entering edge per
//! vertex so that every color `i` is used at most `α_i` times. The individual
//! stages ([`sssp`], [`spg`], [`flow`], [`arb`]) are public as well, along
//! with the constrained-path reductions in [`reductions`] and the
//! brute-force oracles in [`testkit`].

pub mod arb;
pub mod flow;
pub mod graph;
pub mod instance;
pub mod reductions;
pub mod spg;
pub mod spt;
pub mod sssp;
pub mod testkit;

pub use graph::{Color, ColorConstraint, ColoredDigraph, EdgeId, EdgeRecord, VertexId, Weight};
