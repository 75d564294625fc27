//! Exact integer and rational lattice algebra.
//!
//! Provides:
//! - [`Sublattice`] and [`QLattice`]: finite-index sublattices of Z^n and
//!   their rational rescalings, kept in a canonical Hermite normal form so
//!   equal lattices compare bit-equal.
//! - [`Cone`]: rational polyhedral cones given by primitive ray generators.
//! - [`min_shifted_generator`] and [`hilbert_module_generators`]:
//!   brute-force lattice-point oracles for module generators, used as the
//!   independent reference for every closed formula in the crate.
//!
//! All arithmetic is arbitrary precision; no operation accepts or emits
//! approximate values.

pub mod cone;
pub mod lp;
pub mod mat;
pub mod modules;
pub mod scan;
pub mod sublattice;
pub mod vecs;

pub use cone::Cone;
pub use modules::{
    default_search_box, hilbert_module_generators, hilbert_module_generators_rays,
    hilbert_ring_generators, min_shifted_generator, min_shifted_generator_auto,
};
pub use scan::LinearRegion;
pub use sublattice::{QLattice, Sublattice};
pub use vecs::{IntVec, RatVec};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = num_rational::BigRational;

use thiserror::Error;

/// Errors from lattice constructors and lattice-point oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("generators do not span a full-rank sublattice")]
    NotFullRank,
    #[error("ambient ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("lattice is not contained in the other")]
    NotContained,
    #[error("vector length {0} does not match ambient rank {1}")]
    LengthMismatch(usize, usize),
    #[error("ray is zero or not primitive")]
    BadRay,
    #[error("cone is not strongly convex")]
    NotPointed,
    #[error("cone rays do not span the ambient space")]
    NotFullDimensional,
    #[error("operation requires a simplicial cone")]
    NotSimplicial,
    #[error("ring lattice is not contained in the module lattice")]
    IncompatibleLattices,
    #[error("no lattice point found within the search box {box_size}")]
    BoxTooSmall { box_size: Int },
    #[error("module is not principal within the box; minimal antichain: {witnesses:?}")]
    NotPrincipal { witnesses: Vec<RatVec> },
    #[error("search region is unbounded")]
    Unbounded,
}
