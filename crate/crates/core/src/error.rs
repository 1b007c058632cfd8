//! Error types shared by every module of the crate.

use crate::prism::FacetId;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// Callers that map errors onto process exit codes only need the coarse
/// split: [`Error::ResourceLimit`] is a refusal (the input is fine but
/// exceeds a configured budget), [`Error::InternalConsistency`] signals a
/// bug (an identity that must hold exactly failed), and every other
/// variant is an invalid argument.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected GF(2) vectors of dimension {expected}, got {got}")]
    DimensionMismatch { expected: u8, got: u8 },

    #[error("bit pattern {bits:#05b} does not fit in (Z2)^{dim}")]
    VectorOutOfRange { bits: u8, dim: u8 },

    #[error("facet colors must be nonzero vectors")]
    ZeroColor,

    #[error("a prism needs at least two side facets, got m = {0}")]
    PrismTooSmall(u32),

    #[error("facet {facet} does not exist on a prism with {m} side facets")]
    UnknownFacet { facet: FacetId, m: u32 },

    #[error("assignment does not cover facet {0}")]
    MissingFacet(FacetId),

    #[error("partial assignment already violates the vertex shared by {f0}, {f1} and {f2}")]
    InconsistentAssignment { f0: FacetId, f1: FacetId, f2: FacetId },

    #[error("bottom filter {0} is not one of e1, e1+e2, e1+e3, e1+e2+e3")]
    InvalidBottomFilter(crate::gf2::Gf2Vector),

    #[error("the permutation is not an automorphism of the prism's face poset")]
    NotAnAutomorphism,

    #[error("group elements belong to different prisms: m = {0} vs m = {1}")]
    MismatchedPrism(u32, u32),

    #[error("{what} = {requested} exceeds the configured budget (limit {limit})")]
    ResourceLimit {
        what: &'static str,
        requested: u32,
        limit: u32,
    },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("{0}")]
    InvalidArgument(String),
}
