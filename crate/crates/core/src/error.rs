use alloc::string::String;

use crate::graph::{Edge, Vertex};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge {0} has an endpoint outside the vertex set")]
    DanglingEdge(Edge),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("base edge {0} is not an edge of the graph")]
    BaseEdgeMissing(Edge),
    #[error("unknown catalog graph `{0}`")]
    UnknownCatalogName(String),

    #[error("graph is not (2,3)-sparse")]
    NotSparse,
    #[error("graph is not tight")]
    NotTight,

    #[error("no length given for edge {0}")]
    MissingLength(Edge),
    #[error("length given for {0}, which is not an edge")]
    UnexpectedLength(Edge),
    #[error("degenerate length for edge {0}")]
    DegenerateLength(Edge),
    #[error("pinned edge {0} is not an edge of the graph")]
    PinnedEdgeAbsent(Edge),
    #[error("system is not square: {equations} equations in {unknowns} unknowns")]
    NotSquare { equations: usize, unknowns: usize },
    #[error("numeric analysis needs a pinned fiber of dimension at most 1, got {0}")]
    FiberDimension(usize),
    #[error("expected {expected} slices for this fiber, got {given}")]
    SliceCount { expected: usize, given: usize },
    #[error("start system has {0} paths, above the configured budget")]
    TooManyPaths(u64),
    #[error("path tracking failed on {0} paths after retries")]
    TrackingFailure(usize),
    #[error("certification failed: {0}")]
    Certification(String),

    #[error("points used for the isometry fit coincide")]
    DegeneratePoints,
    #[error("realization is not compatible with the lengths (residual {0:e})")]
    Incompatible(f64),

    #[error("graph declares no base edge or no coupler vertex")]
    MissingLabels,
    #[error("graph is not a calligraph")]
    NotCalligraph,
    #[error("calligraph is not thin")]
    NotThin,
    #[error("no calligraphic split available: {0}")]
    SplitUnavailable(String),
}

impl Error {
    /// Errors raised by numerical certification rather than bad input.
    pub fn is_certification(&self) -> bool {
        matches!(
            self,
            Error::TrackingFailure(_) | Error::Certification(_) | Error::TooManyPaths(_)
        )
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Loop(_) => "loop",
            Error::DanglingEdge(_) => "dangling_edge",
            Error::DuplicateEdge(_) => "duplicate_edge",
            Error::DuplicateVertex(_) => "duplicate_vertex",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::BaseEdgeMissing(_) => "base_edge_missing",
            Error::UnknownCatalogName(_) => "unknown_catalog_name",
            Error::NotSparse => "not_sparse",
            Error::NotTight => "not_tight",
            Error::MissingLength(_) => "missing_length",
            Error::UnexpectedLength(_) => "unexpected_length",
            Error::DegenerateLength(_) => "degenerate_length",
            Error::PinnedEdgeAbsent(_) => "pinned_edge_absent",
            Error::NotSquare { .. } => "not_square",
            Error::FiberDimension(_) => "fiber_dimension",
            Error::SliceCount { .. } => "slice_count",
            Error::TooManyPaths(_) => "too_many_paths",
            Error::TrackingFailure(_) => "tracking_failure",
            Error::Certification(_) => "certification",
            Error::DegeneratePoints => "degenerate_points",
            Error::Incompatible(_) => "incompatible",
            Error::MissingLabels => "missing_labels",
            Error::NotCalligraph => "not_calligraph",
            Error::NotThin => "not_thin",
            Error::SplitUnavailable(_) => "split_unavailable",
        }
    }
}
