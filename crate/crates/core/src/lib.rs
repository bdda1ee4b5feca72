//! Berge cycles in hypergraphs: verification, longest-cycle search,
//! shadow representatives, structural tools, extremal constructions and
//! exhaustive search for small extremal numbers.

pub mod berge;
pub mod binom;
pub mod bitset;
pub mod error;
pub mod extremal;
pub mod format;
pub mod graphalg;
pub mod hypergraph;
pub mod matching;
pub mod sdrp;
pub mod search;
pub mod structure;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Graph, Hypergraph, MixedHypergraph, Vertex};
