//! Unitary dynamics on port graphs, checked exhaustively on finite sectors.
//!
//! The state space is spanned by labelled port graphs over a finite vertex
//! universe. This crate provides the graph algebra (consistency, union,
//! disks), exhaustive sector enumeration, sparse operators with the
//! generalized partial trace, decision procedures for causality and
//! localization, and the constructive decomposition of a vertex-preserving
//! causal unitary into mark operators and commuting local gates.
//!
//! Everything here is pure computation over `alloc`; file formats and the
//! command-line front-end live in the `qcgd` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod causal;
pub mod error;
pub mod graph;
pub mod marking;
pub mod operator;
pub mod pair;
pub mod sector;
pub mod state;
pub mod trace;
pub mod universe;
pub mod zoo;

pub use error::Error;
pub use graph::{Edge, Graph, Key, Label, Port, Slot, VertexId, VertexSet};
pub use operator::{Amplitude, LinearOperator, Operator, PairOperator};
pub use pair::PairBasis;
pub use sector::SectorBasis;
pub use state::StateVector;
pub use universe::Universe;

/// Default absolute tolerance for amplitude comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Default maximum number of basis elements in an enumerated sector.
pub const DEFAULT_SECTOR_CAP: usize = 200_000;
