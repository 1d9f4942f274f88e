//! Elimination tests for induced neighbourhoods of finite vertex-transitive
//! and Cayley graphs.
//!
//! Given a finite simple graph `X`, the library tries to certify that `X`
//! cannot occur as the induced neighbourhood (link) of any vertex in a
//! finite vertex-transitive graph, or at least not in a finite Cayley
//! graph. Each certificate is produced by one of seven elimination rules
//! and carries a machine-checkable witness. The `cayley` module builds a
//! census of real Cayley-graph neighbourhoods from a small-group catalog
//! and uses it as a soundness oracle: no census member may ever be
//! eliminated.

pub mod aut;
pub mod brute;
pub mod cayley;
pub mod codec;
pub mod eliminate;
pub mod graph;
pub mod perm;
pub mod structure;

pub use aut::{automorphism_group, canonical_form, is_asymmetric, AutGroup, IsoFamily};
pub use codec::{emit_graph6, parse_edge_list, parse_graph6};
pub use eliminate::{run_all, EliminationReport, Options, Outcome, Scope, Verdict};
pub use graph::{Graph, GraphStats, SubgraphView, VertexSet};
pub use perm::{PermProfile, Permutation};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph of order {0} does not fit the implemented graph6 encoding (max 62)")]
    OrderTooLarge(usize),
    #[error("operation requires a nonempty vertex set")]
    EmptySet,
    #[error("vertex set {0:?} does not induce a clique")]
    NotAClique(Vec<usize>),
    #[error("clique order {k} out of range 1..={n}")]
    CliqueOrderOutOfRange { k: usize, n: usize },
    #[error("invalid group table: {0}")]
    Group(String),
    #[error("invalid connection set: {0}")]
    ConnectionSet(String),
    #[error("permutation input is not a transitive group: {0}")]
    NotTransitiveGroup(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
