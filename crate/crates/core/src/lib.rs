//! Exact counting and classification of (Z2)^3-colorings of m-sided prisms.
//!
//! A coloring assigns one of the seven nonzero vectors of (Z2)^3 to each
//! facet of the prism so that the three colors meeting at every vertex are
//! linearly independent. Colorings correspond to small covers over the
//! prism, and coloring orbits under the face-poset automorphism group
//! correspond to their equivariant diffeomorphism classes.
//!
//! The crate computes the same quantities along three independent routes so
//! that they can be cross-checked exactly:
//!
//! - [`formulas`]: closed formulas and integer recurrences, in
//!   arbitrary-precision arithmetic;
//! - [`coloring`]: exhaustive backtracking enumeration of colorings;
//! - [`burnside`]: orbit counting over explicitly constructed automorphism
//!   groups, by averaging per-element fixed-coloring counts.
//!
//! All three agree on every prism within the brute-force budget; the
//! `verify` subcommand of the companion CLI and the acceptance test suite
//! run those comparisons end to end.
//!
//! With the default `parallel` feature the enumeration kernel and the
//! Burnside sweep distribute across threads via rayon; disabling the
//! feature falls back to the sequential kernels with bit-identical results.

pub mod budget;
pub mod burnside;
pub mod coloring;
pub mod error;
pub mod formulas;
pub mod gf2;
pub mod prism;
pub mod symmetry;

pub use budget::Budget;
pub use burnside::OrbitSummary;
pub use coloring::{Coloring, PartialAssignment};
pub use error::{Error, Result};
pub use gf2::Gf2Vector;
pub use prism::{FacetId, PrismComplex};
pub use symmetry::{FacetPermutation, Word};
