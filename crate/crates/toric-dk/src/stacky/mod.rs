//! Stacky toric pairs and the birational configurations built from them.
//!
//! Provides:
//! - [`StackyFan`]: a simplicial fan whose rays carry multiplicities,
//!   together with [`QDivisor`] and [`MonomialLineBundle`] bookkeeping.
//! - [`BirationalConfig`]: the four weighted contraction / flip shapes,
//!   with [`fans_of`], [`pullback_divisor`], and [`crepancy_compare`].
//! - Discrepancy arithmetic: [`discrepancy_of_ray`], [`ramified_discrepancy`],
//!   and the cyclic-quotient resolution ledger [`hj_resolution`].
//! - Isomorphism classification of monomial line bundles:
//!   [`iso_equivalent`] and [`normal_form`].
//!
//! Line bundles are always stored with their stacky numerators `k_i` over the
//! ray multiplicities `r_i`; rounding to coarse spaces never happens here.

mod classes;
mod config;
mod discrepancy;
mod fan;

pub use classes::{iso_equivalent, normal_form};
pub use config::{
    build_config, crepancy_compare, fans_of, pullback_divisor, BirationalCase, BirationalConfig,
    CrepancyClass, PullbackMap,
};
pub use discrepancy::{
    discrepancy_of_ray, hj_resolution, ramified_discrepancy, DiscrepancyEntry, DiscrepancyLedger,
};
pub use fan::{log_canonical, MonomialLineBundle, QDivisor, StackyFan};

use crate::ratlat::Rat;
use thiserror::Error;

/// Errors from fan validation, configuration building, and divisor pullback.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StackyError {
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ray {index} is zero or not primitive")]
    RayNotPrimitive { index: usize },
    #[error("multiplicity of ray {index} is not positive")]
    MultNotPositive { index: usize },
    #[error("cone references ray {index} but the fan has {rays} rays")]
    RayIndexOutOfBounds { index: usize, rays: usize },
    #[error("cone {cone} has linearly dependent rays")]
    ConeNotSimplicial { cone: usize },
    #[error("cone {cone} does not span the ambient space")]
    ConeNotFullDimensional { cone: usize },
    #[error("cones {first} and {second} do not intersect in a common face")]
    ConesNotMeetingInFace { first: usize, second: usize },
    #[error("weights violate the sign pattern of the case: {reason}")]
    InvalidSigns { reason: String },
    #[error("the weight vector is not primitive")]
    NotPrimitive,
    #[error("index bounds are inconsistent: {reason}")]
    BadRange { reason: String },
    #[error(
        "weight sum {statistic} exceeds the bound {bound} \
         (bound under the alternative reading: {alternative})"
    )]
    WeightBoundExceeded {
        statistic: Rat,
        bound: Rat,
        alternative: Rat,
    },
    #[error("divisor is supported on ray {ray}, outside the domain of this pullback")]
    SupportError { ray: usize },
    #[error("operation applies only to a {expected} configuration")]
    CaseMismatch { expected: &'static str },
    #[error("vector lies outside the cone")]
    NotInCone,
    #[error("bad input: {reason}")]
    BadInput { reason: String },
}
