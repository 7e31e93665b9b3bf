//! Memory-frugal clique partitioning of Pauli strings by palette-sparsified
//! list coloring of the (never materialized) commutation graph.
//!
//! Two Pauli strings that anticommute may share a unitary group, so a group
//! is a clique of the anticommutation graph `G`. Covering `G` with few
//! cliques is the same as properly coloring its complement `G'`, whose edges
//! are the *commuting* pairs. `G'` is typically half dense, so the engine in
//! [`palette`] never stores it: each round draws a small random color list
//! per vertex from a fresh palette, keeps only the complement edges whose
//! endpoints' lists intersect (the conflict graph, see [`conflict`]), colors
//! that sparse graph from the lists ([`list_coloring`]) and retries the
//! leftovers with the next palette.
//!
//! The crate is `no_std` + `alloc`. The default `parallel` feature pulls in
//! `std` and rayon for the pair scans; results are identical with or without
//! it and for any worker count.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod conflict;
mod par;
pub mod graph;
pub mod greedy;
pub mod list_coloring;
pub mod palette;
pub mod pauli;
pub mod rng;
pub mod tuner;
pub mod validate;

pub use conflict::{ConflictConfig, ConflictError, ConflictGraph};
pub use graph::{DegreeStats, EdgeOracleView, ExplicitGraph, GraphError, ViewMode};
pub use greedy::{GreedyError, GreedyOrdering, GreedyResult};
pub use list_coloring::{ConflictColoringOutcome, ConflictStrategy};
pub use palette::{
    ColorLists, ColoringResult, DriverError, IterationPlan, IterationRecord, PaletteParams,
    RunOptions, UNCOLORED,
};
pub use pauli::{EncodedPauli, Pauli, PauliError, PauliSet, PauliString};
pub use validate::{ValidationError, ValidationMode, ValidationReport};
