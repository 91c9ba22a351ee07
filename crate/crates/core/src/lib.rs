//! Asymmetric and minimal asymmetric k-uniform hypergraphs: constructions,
//! automorphism search, and exact or sampled verification of minimality
//! properties.

pub mod autsearch;
pub mod constructions;
pub mod extremal;
pub mod format;
pub mod hypergraph;
pub mod verify;

pub use autsearch::{AutGroupDescription, BudgetExceeded, CanonicalCertificate, Engine};
pub use hypergraph::{Hypergraph, HypergraphError, Permutation, SubgraphSelector, Vertex};
