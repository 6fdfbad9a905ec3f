//! Construction and verification of orientable closed 2-cell embeddings
//! and orientable cycle double covers for projective-planar graphs.
//!
//! The surface model is the signed rotation system: a cyclic order of
//! edges at each vertex plus a sign per edge. On top of it the crate
//! provides face tracing, orientability and representativity, face-ring
//! analysis, crosscap surgery that converts suitable nonorientable
//! embeddings into orientable ones, reductions for cubic graphs with
//! their lifts, a near-triangulation oracle for the parity machinery, and
//! end-to-end pipelines (`ocze`, `ocdc`) with a verifier at every step.

pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod neartri;
pub mod pipeline;
pub mod reductions;
pub mod rings;
pub mod surgery;

pub use error::{Error, Result};
