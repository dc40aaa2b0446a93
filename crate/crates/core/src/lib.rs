//! Causal structure discovery for directed graphs that may contain
//! feedback cycles.
//!
//! The crate is organised bottom-up:
//!
//! - [`digraph`]: labelled directed graphs and ancestral relations;
//! - [`dsep`]: d-separation, with a reachability engine and a brute-force
//!   path oracle that cross-check each other;
//! - [`oracle`]: conditional-independence oracles (exact, from a graph, or
//!   Fisher-z tests on data) with query caching and counting;
//! - [`pag`]: partial ancestral graphs, their text and DOT formats, and a
//!   checker that tests a PAG's claims against a concrete graph;
//! - [`ccd`]: the cyclic causal discovery search itself;
//! - [`sem`]: linear structural equation models with feedback, used to
//!   simulate data;
//! - [`equiv`]: brute-force Markov equivalence via d-separation
//!   fingerprints;
//! - [`cli`]: the `ccd` command-line front end.

pub mod ccd;
pub mod cli;
pub mod digraph;
pub mod dsep;
pub mod equiv;
pub mod oracle;
pub mod pag;
pub mod sem;

pub use ccd::{run_ccd, CcdState};
pub use digraph::{DirectedGraph, GraphError, VertexId};
pub use dsep::{brute_force_d_connected, d_connected, d_separated, SeparationQuery};
pub use oracle::{CiQuery, DataMatrix, FisherZOracle, GraphOracle, IndependenceOracle, OracleStats, Phase};
pub use pag::{EndpointMark, Pag, Triple};
pub use sem::LinearSem;

/// First line of every text file this crate writes.
pub const FORMAT_HEADER: &str = "# ccd-kit format v1";
