//! Čech cohomology of divisorial sheaves on the configuration coarse spaces.
//!
//! The coarse space of each fan is covered by the affine charts of its
//! maximal cones. For a torus-invariant divisor the cohomology splits into
//! graded pieces indexed by integer degrees, and each piece is computed by
//! exact rational ranks of a finite Čech complex. [`verify_vanishing`]
//! scans a finite degree box and reports every degree with nonzero higher
//! cohomology, so an empty witness list verifies a vanishing claim within
//! the box.

mod cech;

pub use cech::{cech_graded_dim, verify_vanishing, CechReport};

use super::fm::{fm_case1, fm_case2, FmError};
use crate::ratlat::vecs::{ceil_div, floor_div};
use crate::ratlat::{Int, Rat};
use crate::stacky::{BirationalCase, BirationalConfig, MonomialLineBundle, QDivisor};

/// Which side of the birational map a sheaf lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The side carrying the exceptional ray (the subdivided fan).
    X,
    /// The contracted side.
    Y,
}

/// Coarse-space reflexive hull of `Hom(L', L)` as an integer divisor.
///
/// The two sides round in the form matching their fan: the contraction
/// cases use the ceiling-dual form `-ceil(dk_i / r_i)`, the flip and
/// inverse contraction cases the floor form `floor(dk_i / r_i)`, where
/// `dk = k - k'`. On the side without the exceptional ray the divisor has
/// `n` coefficients, on the other side `n + 1`. Exceptional numerators that
/// the bundles do not carry are derived from the image formulas.
pub fn rounded_hom_sheaf(
    l_prime: &MonomialLineBundle,
    l: &MonomialLineBundle,
    side: Side,
    config: &BirationalConfig,
) -> Result<QDivisor, FmError> {
    let n = config.n();
    let r = config.r();
    let coeffs: Vec<Int> = match (config.case(), side) {
        (BirationalCase::Reweight, Side::Y) => {
            check_len(l, n)?;
            check_len(l_prime, n)?;
            let s = config.s();
            (0..n)
                .map(|i| -ceil_div(&(&l.k()[i] - &l_prime.k()[i]), &s[i]))
                .collect()
        }
        (BirationalCase::Reweight, Side::X) => {
            let f = fm_case1(l.k(), config)?;
            let f2 = fm_case1(l_prime.k(), config)?;
            (0..n)
                .map(|i| -ceil_div(&(&f.target.k()[i] - &f2.target.k()[i]), &r[i]))
                .collect()
        }
        (BirationalCase::Contraction, Side::Y) => {
            check_len(l, n)?;
            check_len(l_prime, n)?;
            (0..n)
                .map(|i| -ceil_div(&(&l.k()[i] - &l_prime.k()[i]), &r[i]))
                .collect()
        }
        (BirationalCase::Contraction, Side::X) => {
            let f = fm_case2(l, config)?;
            let f2 = fm_case2(l_prime, config)?;
            (0..=n)
                .map(|i| -ceil_div(&(&f.target.k()[i] - &f2.target.k()[i]), &r[i]))
                .collect()
        }
        (BirationalCase::Flip, _) => {
            check_len(l, n + 1)?;
            check_len(l_prime, n + 1)?;
            (0..=n)
                .map(|i| floor_div(&(&l.k()[i] - &l_prime.k()[i]), &r[i]))
                .collect()
        }
        (BirationalCase::InverseContraction, Side::X) => {
            check_len(l, n + 1)?;
            check_len(l_prime, n + 1)?;
            (0..=n)
                .map(|i| floor_div(&(&l.k()[i] - &l_prime.k()[i]), &r[i]))
                .collect()
        }
        (BirationalCase::InverseContraction, Side::Y) => {
            check_len(l, n + 1)?;
            check_len(l_prime, n + 1)?;
            (0..n)
                .map(|i| floor_div(&(&l.k()[i] - &l_prime.k()[i]), &r[i]))
                .collect()
        }
    };
    let rational: Vec<Rat> = coeffs.into_iter().map(Rat::from).collect();
    Ok(QDivisor::from_dense(&rational))
}

fn check_len(l: &MonomialLineBundle, expected: usize) -> Result<(), FmError> {
    if l.len() != expected {
        return Err(FmError::LengthMismatch {
            expected,
            found: l.len(),
        });
    }
    Ok(())
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::X => write!(f, "X"),
            Side::Y => write!(f, "Y"),
        }
    }
}
