//! Ruzsa-Szemerédi graph workbench.
//!
//! An `(r, t)`-RS graph is a graph whose edge set splits into `t` pairwise
//! edge-disjoint induced matchings of exactly `r` edges each. This crate
//! holds the pure algorithmic part of the workbench:
//!
//! - [`graph`] and [`decomposition`]: the data model and the verifier that
//!   certifies the RS property together with its edge-local invariants.
//! - [`constructions`]: deterministic generators for the Kneser, hypercube,
//!   Cayley/3-AP-free families and the disjoint-union and double-cover
//!   transforms.
//! - [`bounds`]: exact-rational evaluation of the extremal bounds, the
//!   Hamming-distance certificate and the expansion audit.
//! - [`search`]: exhaustive decision procedures with symmetry reduction.
//!
//! The crate is `no_std` and only needs `alloc`. IO, the CLI and wall-clock
//! budgets live in the companion `rsg` crate.
#![no_std]

extern crate alloc;

pub mod bounds;
pub mod constructions;
pub mod decomposition;
mod error;
pub mod graph;
pub mod rational;
pub mod search;

pub use decomposition::{
    decomposition_stats, induced_matching_check, verify_decomposition, DecompositionStats,
    InducedCheck, Invariant, MatchingDecomposition, RsParameters, VerificationReport, Violation,
    Witness,
};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use rational::Rational;
