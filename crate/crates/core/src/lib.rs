//! Exact Max-Cut for weighted graphs that come with a 1-planar embedding's
//! crossing list.
//!
//! A drawing is 1-planar when every edge is crossed at most once. Given the
//! list of crossings `X`, each crossing `{(v,y), (w,z)}` is eliminated by
//! branching three ways: contract `w` with `y`, contract `y` with `z`, or
//! delete the edge `(w,z)`. Every optimal bipartition survives in at least
//! one branch, so after at most `3^|X|` leaves the problem reduces to
//! crossing-free graphs. Those are solved exactly through planar duality:
//! a cut of a planar graph is an even subgraph of its dual, so the best cut
//! is `c(E+) - min T-join` where `E+` is the positively weighted edge set
//! and `T` collects the dual faces with odd positive degree. The T-join is
//! found with all-pairs shortest paths plus a blossom perfect matching.
//! Winning leaf cuts are projected back by splitting contracted nodes.
//!
//! Modules, bottom of the stack first:
//!
//! * [`rng`]: splitmix64, the fixed PRNG for reproducible generation.
//! * [`graph`]: weighted graphs, contraction, deletion, SPLIT, blocks.
//! * [`matching`]: blossom minimum-weight perfect matching and Dijkstra.
//! * [`model`]: crossing sets, validation, UPDATE, the three-way branch.
//! * [`planar`]: planarity test, embeddings, duals, the planar solver.
//! * [`solver`]: the branching recursion and cut back-projection.
//! * [`oracle`]: brute-force references and the partition classifier.
//! * [`instance`]: the line-oriented instance file format.
//! * [`gen`]: seeded planar and 1-planar instance generators.

pub mod gen;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod planar;
pub mod rng;
pub mod solver;

use graph::{Edge, NodeId};

/// Crate-wide error type. Arithmetic never wraps silently: any weight sum
/// that leaves the signed 64-bit range is reported as [`Error::Overflow`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error("cannot contract node {0} with itself")]
    ContractSelf(NodeId),
    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),
    #[error("weight arithmetic left the signed 64-bit range")]
    Overflow,
    #[error("graph is not planar")]
    NonPlanar,
    #[error("edge {0} is a bridge, so it has no two-sided dual image")]
    Bridge(Edge),
    #[error("crossing-free subproblem is not planar: the crossing list does not describe a 1-planar embedding")]
    InconsistentEmbedding,
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("edge set is not a cut")]
    NotACut,
    #[error("{nodes} nodes exceed the brute-force limit of {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("crossing set is empty")]
    EmptyCrossingSet,
    #[error("crossing is not in the instance")]
    UnknownCrossing,
    #[error("instance has validation errors: {0}")]
    InvalidInstance(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("generator: {0}")]
    Generator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
