use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Errors shared across the crate. Precondition violations carry enough
/// context to point at the offending object.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge at input position {index} is a loop at vertex {vertex}")]
    LoopEdge { index: usize, vertex: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("unknown edge id {0:?}")]
    UnknownEdge(EdgeId),

    #[error("unknown vertex id {0:?}")]
    UnknownVertex(VertexId),

    #[error("unbalanced vertex {0:?}: in-degree differs from out-degree")]
    UnbalancedVertex(VertexId),

    #[error("invalid rotation at vertex {vertex:?}: {reason}")]
    InvalidRotation { vertex: VertexId, reason: String },

    #[error("walk is not closed or not connected at position {0}")]
    WalkNotClosed(usize),

    #[error("scheme is not a closed 2-cell embedding")]
    NotClosedTwoCell,

    #[error("representativity undefined on sphere")]
    SphereRepresentativity,

    #[error("unsupported surface: Euler characteristic {chi} (expected projective plane)")]
    UnsupportedSurface { chi: i64 },

    #[error("scheme is orientable; the orientable double cover would be disconnected")]
    AlreadyOrientable,

    #[error("graph is not planar")]
    NonPlanar,

    #[error("graph is not cubic: vertex {vertex:?} has degree {degree}")]
    NotCubic { vertex: VertexId, degree: usize },

    #[error("graph is not 2-connected")]
    NotTwoConnected,

    #[error("faces {0} and {1} do not touch")]
    FacesDoNotTouch(usize, usize),

    #[error("faces {0} and {1} touch at {2} components; crosscap insertion is ambiguous")]
    AmbiguousTouching(usize, usize, usize),

    #[error("invalid face ring: {0}")]
    InvalidRing(String),

    #[error("face ring is not elementary")]
    NotElementary,

    #[error("not a cycle double cover: edge {0:?} is covered {1} times")]
    NotDoubleCover(EdgeId, usize),

    #[error("cut system invalid: {0}")]
    InvalidCutSystem(String),

    #[error("malformed region: {0}")]
    MalformedRegion(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("reduction step is stale: {0}")]
    StaleStep(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal error (this is a bug): {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
