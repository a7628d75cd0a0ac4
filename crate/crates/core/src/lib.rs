//! Combinatorial and numerical tools for planar bar graphs.
//!
//! Given a graph whose edges carry squared lengths, this crate decides
//! (2,3)-sparsity and tightness with the pebble game, computes the unique
//! max-tight decomposition, counts complex realizations of tight graphs by
//! homotopy continuation, and reports the number of irreducible components
//! of the set of compatible realizations as the product of the realization
//! counts of the max-tight parts. Calligraphs (graphs with a base edge
//! `{1,2}` and a coupler vertex `0`) get class computation and coupler
//! curve predictions checked against numerical witness sets.
//!
//! The crate is `no_std` with `alloc`. The default `std` feature only turns
//! on parallel path tracking.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod calligraph;
pub mod catalog;
pub mod components;
mod error;
pub mod graph;
pub mod henneberg;
pub mod homotopy;
pub mod isometry;
pub mod lengths;
mod linalg;
pub mod monodromy;
pub mod poly;
pub mod realization;
pub mod rng;
pub mod sparsity;
pub mod trace;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use lengths::{EdgeLengths, Rational};

/// Complex scalar used by every numerical routine.
pub type C = num_complex::Complex64;
