//! Line-bundle transforms across birational configurations.
//!
//! Each [`BirationalCase`](crate::stacky::BirationalCase) carries a
//! comparison functor that sends a monomial line bundle on one side of the
//! birational map to a monomial line bundle on the other side. This module
//! computes those images together with their per-chart module generators,
//! evaluates the exact rational windows inside which the image is again a
//! single sheaf, and compares the graded Hom spaces of a bundle pair on the
//! two sides degree by degree.
//!
//! All window arithmetic is exact; a bundle on a range boundary is
//! classified by rational comparison, never by tolerance.

mod cases;
mod hom;

pub use cases::{
    ceiling_identity_check, fm_case1, fm_case2, fm_case3, fm_case4, range_check,
    stratum_twist_range_check,
};
pub(crate) use cases::{flip_window_bound, inverse_window_bound};
pub use hom::{hom_graded_compare, GradedHomReport, HomVerdict};

use thiserror::Error;

use crate::ratlat::{Rat, RatVec};
use crate::stacky::MonomialLineBundle;

/// Errors reported by the transform and comparison operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FmError {
    /// The configuration's case does not support the requested operation.
    #[error("operation requires {expected}")]
    ConfigMismatch { expected: &'static str },
    /// A bundle carries the wrong number of numerators for its side.
    #[error("bundle has {found} numerators, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    /// The range statistic left the window guaranteeing a sheaf image.
    #[error("range statistic {statistic} falls outside the window [0, {bound})")]
    OutOfRange { statistic: Rat, bound: Rat },
    /// The stratum or its twist vector violates the admissibility rules.
    #[error("{reason}")]
    BadStratum { reason: String },
}

/// The exact inequality values backing the claim that the image is a sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingCertificate {
    /// No vanishing input is needed; the image formula is pure arithmetic.
    Unconditional,
    /// Nonnegative crepancy sum; the image is a sheaf for every bundle.
    Crepancy { sum: Rat },
    /// Window membership `0 <= statistic < bound` for this bundle.
    Window { statistic: Rat, bound: Rat },
}

/// Image of a monomial line bundle under a configuration's functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmResult {
    /// Numerators of the image bundle on the other side of the map.
    pub target: MonomialLineBundle,
    /// Minimal module generator on each maximal chart of the image side,
    /// listed in chart order. Every generator pairs integrally with the
    /// scaled rays of its chart.
    pub chart_generators: Vec<RatVec>,
    /// Whether the input satisfied the case's range window (always true on
    /// success; out-of-window inputs error instead).
    pub in_range: bool,
    /// The inequality values that make the image a sheaf.
    pub vanishing_certificate: VanishingCertificate,
    /// Exceptional-divisor twist coefficient on the common resolution,
    /// recorded for the two-sided subdivision case only.
    pub w_twist: Option<Rat>,
}
