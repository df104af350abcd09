//! Berge-Ramsey lower-bound constructions for complete uniform hypergraphs.
//!
//! The crate builds forbidden-color tables and the colorings of `K_N^r` they
//! induce, detects monochromatic Berge cliques by bipartite matching,
//! derandomizes the random construction into certified colorings, evaluates
//! the associated closed-form bounds exactly, and decides small
//! Berge-Ramsey numbers by exhaustive search.

pub mod combinat;
pub mod hypergraph;
pub mod berge;
pub mod bounds;
pub mod construct;
pub mod hedgehog;
pub mod search;
pub mod cli;
