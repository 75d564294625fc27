//! Discrepancy arithmetic and minimal resolutions of cyclic quotient
//! surface singularities.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fan::{QDivisor, StackyFan};
use super::StackyError;
use crate::ratlat::mat::{solve_columns, RatMat};
use crate::ratlat::vecs::{ceil_div, to_rat};
use crate::ratlat::{Int, Rat, RatVec};

/// The log discrepancy of the valuation of `w` over the pair given by the
/// fan and a boundary divisor.
///
/// Writing `w = sum lambda_i v_i` over the listed rays (all `lambda_i >= 0`
/// is required), the discrepancy is `sum lambda_i (1 - b_i) - 1` with `b_i`
/// the boundary coefficient at ray `i`.
pub fn discrepancy_of_ray(
    fan: &StackyFan,
    boundary: &QDivisor,
    w: &[Rat],
    cone: &[usize],
) -> Result<Rat, StackyError> {
    if w.len() != fan.ambient_rank() {
        return Err(StackyError::LengthMismatch {
            expected: fan.ambient_rank(),
            found: w.len(),
        });
    }
    for &i in cone {
        if i >= fan.ray_count() {
            return Err(StackyError::RayIndexOutOfBounds {
                index: i,
                rays: fan.ray_count(),
            });
        }
    }
    let cols: Vec<RatVec> = cone.iter().map(|&i| to_rat(fan.ray(i))).collect();
    if RatMat::from_columns(fan.ambient_rank(), &cols).rank() < cols.len() {
        return Err(StackyError::BadInput {
            reason: "cone rays are linearly dependent".into(),
        });
    }
    let lambda = solve_columns(&cols, w).ok_or(StackyError::NotInCone)?;
    if lambda.iter().any(|x| x.is_negative()) {
        return Err(StackyError::NotInCone);
    }
    let mut acc = -Rat::one();
    for (t, &i) in cone.iter().enumerate() {
        acc += &lambda[t] * (Rat::one() - boundary.coefficient(i));
    }
    Ok(acc)
}

/// Discrepancy on a degree-`e` cover ramified along the divisor:
/// `b = a e + (e - 1)`, so `b + 1 = e (a + 1)`.
pub fn ramified_discrepancy(a: &Rat, e: &Int) -> Rat {
    assert!(*e >= Int::one(), "covering degree must be positive");
    let e = Rat::from_integer(e.clone());
    a * &e + &e - Rat::one()
}

/// One exceptional ray of a resolution, with the data its discrepancy was
/// computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyEntry {
    /// The exceptional ray in the ambient rational lattice.
    pub ray: RatVec,
    /// Its coordinates in the rays of the resolved cone.
    pub coefficients: RatVec,
    /// Log discrepancy of the ray over the unresolved pair.
    pub discrepancy: Rat,
    /// Boundary coefficient `1 - 1/r` attached to the ray downstream.
    pub boundary_coefficient: Rat,
    /// Self-intersection of the exceptional curve (surface resolutions).
    pub self_intersection: Int,
}

/// The per-ray discrepancy bookkeeping of a resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyLedger {
    pub entries: Vec<DiscrepancyEntry>,
}

/// Minimal resolution of the cyclic quotient surface singularity of type
/// `(n, q)`: the quotient of the plane by `(x, y) -> (zx, z^q y)` for a
/// primitive `n`-th root of unity `z`.
///
/// The exceptional rays follow the negative-regular continued fraction of
/// `n/q`: with `u_0 = (0,1)` and `u_1 = (1/n)(1,q)`, each digit `b_j` gives
/// `u_{j+1} = b_j u_j - u_{j-1}`, ending at `(1,0)`. Digit `b_j` is the
/// negated self-intersection of the `j`-th exceptional curve, and the log
/// discrepancy of `u_j = (x, y)` over the boundary-free pair is
/// `x + y - 1`.
pub fn hj_resolution(n: &Int, q: &Int) -> Result<DiscrepancyLedger, StackyError> {
    if !(Int::zero() < *q && q < n) {
        return Err(StackyError::BadInput {
            reason: "need 0 < q < n".into(),
        });
    }
    if n.gcd(q) != Int::one() {
        return Err(StackyError::BadInput {
            reason: "n and q must be coprime".into(),
        });
    }
    let mut digits: Vec<Int> = Vec::new();
    let (mut top, mut bot) = (n.clone(), q.clone());
    while !bot.is_zero() {
        let b = ceil_div(&top, &bot);
        let next = &b * &bot - &top;
        digits.push(b);
        top = bot;
        bot = next;
    }
    let mut prev: RatVec = vec![Rat::zero(), Rat::one()];
    let mut cur: RatVec = vec![
        Rat::new(Int::one(), n.clone()),
        Rat::new(q.clone(), n.clone()),
    ];
    let mut entries = Vec::with_capacity(digits.len());
    for b in &digits {
        let disc = &cur[0] + &cur[1] - Rat::one();
        entries.push(DiscrepancyEntry {
            ray: cur.clone(),
            coefficients: cur.clone(),
            discrepancy: disc,
            boundary_coefficient: Rat::zero(),
            self_intersection: -b.clone(),
        });
        let bq = Rat::from_integer(b.clone());
        let next = vec![&bq * &cur[0] - &prev[0], &bq * &cur[1] - &prev[1]];
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cur, vec![Rat::one(), Rat::zero()]);
    Ok(DiscrepancyLedger { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{int, rat, rvec, rvec_frac};
    use crate::ratlat::QLattice;

    fn smooth_plane() -> StackyFan {
        StackyFan::orthant(2, vec![int(1), int(1)]).unwrap()
    }

    #[test]
    fn ordinary_blowup_has_discrepancy_one() {
        let fan = smooth_plane();
        let a = discrepancy_of_ray(&fan, &QDivisor::zero(), &rvec(&[1, 1]), &[0, 1]).unwrap();
        assert_eq!(a, rat(1, 1));
    }

    #[test]
    fn eighth_root_ray_has_discrepancy_minus_half() {
        let fan = smooth_plane();
        let w = rvec_frac(&[(1, 8), (3, 8)]);
        let a = discrepancy_of_ray(&fan, &QDivisor::zero(), &w, &[0, 1]).unwrap();
        assert_eq!(a, rat(-1, 2));
    }

    #[test]
    fn two_thirds_boundary_makes_the_weighted_ray_crepant() {
        let fan = smooth_plane();
        let b = QDivisor::from_pairs(&[(0, rat(2, 3)), (1, rat(2, 3))]);
        let a = discrepancy_of_ray(&fan, &b, &rvec(&[1, 2]), &[0, 1]).unwrap();
        assert_eq!(a, rat(0, 1));
    }

    #[test]
    fn outside_vectors_are_rejected() {
        let fan = smooth_plane();
        let err = discrepancy_of_ray(&fan, &QDivisor::zero(), &rvec(&[-1, 1]), &[0, 1]);
        assert_eq!(err, Err(StackyError::NotInCone));
        // A 1-ray cone only spans its own ray.
        let err = discrepancy_of_ray(&fan, &QDivisor::zero(), &rvec(&[1, 1]), &[0]);
        assert_eq!(err, Err(StackyError::NotInCone));
        let ok = discrepancy_of_ray(&fan, &QDivisor::zero(), &rvec(&[2, 0]), &[0]);
        assert_eq!(ok, Ok(rat(1, 1)));
    }

    #[test]
    fn ramification_transforms_discrepancies() {
        assert_eq!(ramified_discrepancy(&rat(-1, 2), &int(2)), rat(0, 1));
        assert_eq!(ramified_discrepancy(&rat(0, 1), &int(1)), rat(0, 1));
        assert_eq!(ramified_discrepancy(&rat(1, 1), &int(3)), rat(5, 1));
        // b + 1 = e (a + 1) exactly.
        let a = rat(-3, 7);
        let b = ramified_discrepancy(&a, &int(5));
        assert_eq!(&b + rat(1, 1), rat(5, 1) * (&a + rat(1, 1)));
    }

    #[test]
    fn resolution_of_eight_three() {
        let ledger = hj_resolution(&int(8), &int(3)).unwrap();
        assert_eq!(ledger.entries.len(), 2);
        assert_eq!(ledger.entries[0].ray, rvec_frac(&[(1, 8), (3, 8)]));
        assert_eq!(ledger.entries[1].ray, rvec_frac(&[(3, 8), (1, 8)]));
        for e in &ledger.entries {
            assert_eq!(e.self_intersection, int(-3));
            assert_eq!(e.discrepancy, rat(-1, 2));
        }
    }

    #[test]
    fn resolution_of_small_quotients() {
        let a1 = hj_resolution(&int(2), &int(1)).unwrap();
        assert_eq!(a1.entries.len(), 1);
        assert_eq!(a1.entries[0].ray, rvec_frac(&[(1, 2), (1, 2)]));
        assert_eq!(a1.entries[0].self_intersection, int(-2));
        assert_eq!(a1.entries[0].discrepancy, rat(0, 1));

        let third = hj_resolution(&int(3), &int(1)).unwrap();
        assert_eq!(third.entries.len(), 1);
        assert_eq!(third.entries[0].ray, rvec_frac(&[(1, 3), (1, 3)]));
        assert_eq!(third.entries[0].self_intersection, int(-3));
        assert_eq!(third.entries[0].discrepancy, rat(-1, 3));
    }

    #[test]
    fn degenerate_quotient_data_is_rejected() {
        assert!(matches!(
            hj_resolution(&int(4), &int(2)),
            Err(StackyError::BadInput { .. })
        ));
        assert!(matches!(
            hj_resolution(&int(3), &int(5)),
            Err(StackyError::BadInput { .. })
        ));
        assert!(matches!(
            hj_resolution(&int(3), &int(0)),
            Err(StackyError::BadInput { .. })
        ));
    }

    #[test]
    fn consecutive_resolution_rays_generate_the_quotient_lattice() {
        // Smoothness of the resolution: each consecutive ray pair is a basis
        // of Z^2 + Z (1/8)(1,3).
        let ledger = hj_resolution(&int(8), &int(3)).unwrap();
        let lat = QLattice::from_rational_columns(
            2,
            &[
                rvec(&[1, 0]),
                rvec(&[0, 1]),
                rvec_frac(&[(1, 8), (3, 8)]),
            ],
        )
        .unwrap();
        let mut walk: Vec<RatVec> = Vec::new();
        walk.push(rvec(&[0, 1]));
        for e in &ledger.entries {
            walk.push(e.ray.clone());
        }
        walk.push(rvec(&[1, 0]));
        for pair in walk.windows(2) {
            let span = QLattice::from_rational_columns(2, pair).unwrap();
            assert_eq!(span, lat);
        }
    }
}
