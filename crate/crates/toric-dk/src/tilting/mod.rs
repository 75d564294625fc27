//! Tilting bundles and their endomorphism quivers.
//!
//! On the contracted side of a flip or inverse contraction only finitely
//! many isomorphism classes of monomial line bundles lie inside the range
//! window. This module enumerates them exactly, assembles the direct sum's
//! endomorphism data (minimal Hom generators as quiver arrows), verifies
//! graded orthogonality with Čech box scans, and exports the quiver in
//! deterministic DOT or JSON form.

mod quiver;
mod ranges;

pub use quiver::{
    build_tilting, export_quiver, OrthogonalityEntry, OrthogonalitySummary, QuiverArrow,
    QuiverFormat, QuiverJson, QuiverVertex, TiltingData,
};
pub use ranges::enumerate_range_classes;

use thiserror::Error;

use crate::fm::FmError;
use crate::ratlat::LatticeError;

/// Errors from class enumeration and quiver assembly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltingError {
    /// The configuration's case does not carry a range window.
    #[error("operation requires {expected}")]
    ConfigMismatch { expected: &'static str },
    /// No line bundle class lies inside the range window.
    #[error("no line bundle classes lie in the range window")]
    EmptyTilting,
    /// A lattice scan failed; `BoxTooSmall` propagates unchanged.
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    /// A sheaf-level computation on a bundle pair failed.
    #[error(transparent)]
    Fm(#[from] FmError),
}
