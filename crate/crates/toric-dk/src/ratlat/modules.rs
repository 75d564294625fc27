//! Brute-force lattice-point oracles for module generators.
//!
//! These operations make no use of the closed formulas elsewhere in the
//! crate; they enumerate lattice points directly and are used as the
//! independent reference implementation in tests and randomized suites.

use super::cone::Cone;
use super::scan::{lattice_points_in_ray_box, ray_box_has_point_below, ray_coordinates};
use super::sublattice::QLattice;
use super::vecs::{add_rr, ceil, dot_ri, lex_cmp, sub_rr, RatVec};
use super::{Int, LatticeError, Rat};
use num_traits::{One, Signed, Zero};

/// Default search box in ray coordinates: the generator of a principal
/// module lies within one fundamental parallelepiped of the shift, so the
/// per-ray sum of |<basis vector, ray>| over the lattice basis bounds the
/// search. Always at least 1.
pub fn default_search_box(lattice: &QLattice, rays: &[Vec<Int>]) -> Int {
    let basis = lattice.basis_columns();
    let mut best = Int::one();
    for ray in rays {
        let mut acc = Rat::zero();
        for b in &basis {
            let v = dot_ri(b, ray);
            acc += v.abs();
        }
        let c = ceil(&acc);
        if c > best {
            best = c;
        }
    }
    best
}

fn module_points(
    shift_coords: &[Rat],
    cone: &Cone,
    lattice: &QLattice,
    box_size: &Int,
) -> Result<Vec<(RatVec, RatVec)>, LatticeError> {
    let hi: Vec<Rat> = shift_coords
        .iter()
        .map(|lo| lo + Rat::from_integer(box_size.clone()))
        .collect();
    let pts = lattice_points_in_ray_box(lattice, cone.rays(), shift_coords, &hi)?;
    Ok(pts
        .into_iter()
        .map(|u| {
            let y = ray_coordinates(&u, cone.rays());
            (u, y)
        })
        .collect())
}

fn dominates(a: &[Rat], b: &[Rat]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal elements of the point set under the componentwise ray-coordinate
/// order.
fn minimal_elements(pts: &[(RatVec, RatVec)]) -> Vec<(RatVec, RatVec)> {
    let mut minimal: Vec<(RatVec, RatVec)> = Vec::new();
    for (u, y) in pts {
        if minimal.iter().any(|(_, my)| dominates(my, y)) {
            continue;
        }
        minimal.retain(|(_, my)| !dominates(y, my));
        minimal.push((u.clone(), y.clone()));
    }
    minimal.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    minimal
}

/// Unique minimal element of `(m + dual cone) cap L` under the ray-pairing
/// partial order, searched within `box_size` in ray coordinates.
///
/// The cone must be simplicial and full-dimensional. Errors with
/// `NotPrincipal` (carrying the minimal antichain) when two incomparable
/// minimal points exist in the box, and with `BoxTooSmall` when the box
/// contains no module point at all.
///
/// The search is staged: a small grown box finds candidate minima (a point
/// minimal within any box is minimal in the module, since a dominating
/// point is componentwise no larger and hence inside the same box), and a
/// per-ray emptiness count over the full box certifies that nothing
/// incomparable was missed. Only when that certificate fails does the full
/// box get enumerated, so the result matches the plain full scan exactly.
pub fn min_shifted_generator(
    m: &[Rat],
    cone: &Cone,
    lattice: &QLattice,
    box_size: &Int,
) -> Result<RatVec, LatticeError> {
    if !cone.is_simplicial() || !cone.is_full_dimensional() {
        return Err(LatticeError::NotSimplicial);
    }
    assert_eq!(m.len(), lattice.ambient_rank());
    // A shift that is itself a lattice point is the unique minimal element
    // of its module: every module point pairs at least as high on every
    // ray, so no enumeration is needed and the box cannot be too small.
    if lattice.contains(m) {
        return Ok(m.to_vec());
    }
    let shift_coords = ray_coordinates(m, cone.rays());
    let mut grown = Int::one();
    let seed_pts = loop {
        let eff = std::cmp::min(&grown, box_size).clone();
        let pts = module_points(&shift_coords, cone, lattice, &eff)?;
        if !pts.is_empty() {
            break pts;
        }
        if &eff >= box_size {
            return Err(LatticeError::BoxTooSmall { box_size: box_size.clone() });
        }
        grown *= 2;
    };
    let minimal = minimal_elements(&seed_pts);
    if minimal.len() == 1 {
        let (g, gy) = &minimal[0];
        let hi: Vec<Rat> = shift_coords
            .iter()
            .map(|lo| lo + Rat::from_integer(box_size.clone()))
            .collect();
        let mut incomparable = false;
        for i in 0..cone.ray_count() {
            if ray_box_has_point_below(lattice, cone.rays(), &shift_coords, &hi, i, &gy[i])? {
                incomparable = true;
                break;
            }
        }
        if !incomparable {
            return Ok(g.clone());
        }
    }
    let pts = module_points(&shift_coords, cone, lattice, box_size)?;
    let minimal = minimal_elements(&pts);
    if minimal.len() == 1 {
        Ok(minimal.into_iter().next().unwrap().0)
    } else {
        Err(LatticeError::NotPrincipal {
            witnesses: minimal.into_iter().map(|(u, _)| u).collect(),
        })
    }
}

/// [`min_shifted_generator`] with the default box, doubling on
/// `BoxTooSmall` up to four retries.
pub fn min_shifted_generator_auto(
    m: &[Rat],
    cone: &Cone,
    lattice: &QLattice,
) -> Result<RatVec, LatticeError> {
    let mut box_size = default_search_box(lattice, cone.rays());
    let mut last = Err(LatticeError::BoxTooSmall { box_size: box_size.clone() });
    for _ in 0..=4 {
        last = min_shifted_generator(m, cone, lattice, &box_size);
        match &last {
            Err(LatticeError::BoxTooSmall { .. }) => box_size *= 2,
            _ => return last,
        }
    }
    last
}

/// Minimal generators over the monoid `ring_lattice cap dual cone` of the
/// module whose ray-coordinate lower bounds are `ray_lower_bounds`.
///
/// The cone may be non-simplicial but must be strongly convex and
/// full-dimensional (so that zero is the only monoid element with all ray
/// pairings zero). The ring lattice must be contained in the module lattice.
/// A module element within the box reduces by a monoid element only if the
/// monoid element's ray coordinates stay within the box, so the in-box
/// generator list is exact; generators touching the box boundary signal
/// `BoxTooSmall`.
pub fn hilbert_module_generators_rays(
    ray_lower_bounds: &[Rat],
    cone: &Cone,
    module_lattice: &QLattice,
    ring_lattice: &QLattice,
    box_size: &Int,
) -> Result<Vec<RatVec>, LatticeError> {
    if !cone.is_full_dimensional() {
        return Err(LatticeError::NotFullDimensional);
    }
    assert_eq!(ray_lower_bounds.len(), cone.ray_count());
    for col in ring_lattice.basis_columns() {
        if !module_lattice.contains(&col) {
            return Err(LatticeError::IncompatibleLattices);
        }
    }
    let pts = module_points(ray_lower_bounds, cone, module_lattice, box_size)?;
    let zeros = vec![Rat::zero(); cone.ray_count()];
    let monoid: Vec<(RatVec, RatVec)> = module_points(&zeros, cone, ring_lattice, box_size)?
        .into_iter()
        .filter(|(_, y)| y.iter().any(|c| !c.is_zero()))
        .collect();
    let mut gens: Vec<(RatVec, RatVec)> = Vec::new();
    for (u, y) in &pts {
        let reducible = monoid.iter().any(|(_, wy)| {
            sub_rr(y, wy)
                .iter()
                .zip(ray_lower_bounds)
                .all(|(c, lo)| c >= lo)
        });
        if !reducible {
            gens.push((u.clone(), y.clone()));
        }
    }
    // A generator in the outermost unit shell may shadow one outside the box.
    let boundary = gens.iter().any(|(_, y)| {
        y.iter().zip(ray_lower_bounds).any(|(c, lo)| {
            c - lo > Rat::from_integer(box_size.clone()) - Rat::one()
        })
    });
    if boundary {
        return Err(LatticeError::BoxTooSmall { box_size: box_size.clone() });
    }
    let mut out: Vec<RatVec> = gens.into_iter().map(|(u, _)| u).collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    Ok(out)
}

/// Generators of the module `(shift + dual cone) cap module_lattice` over
/// the monoid `ring_lattice cap dual cone`; the geometric-shift form of
/// [`hilbert_module_generators_rays`].
pub fn hilbert_module_generators(
    shift: &[Rat],
    cone: &Cone,
    module_lattice: &QLattice,
    ring_lattice: &QLattice,
    box_size: &Int,
) -> Result<Vec<RatVec>, LatticeError> {
    let bounds = ray_coordinates(shift, cone.rays());
    hilbert_module_generators_rays(&bounds, cone, module_lattice, ring_lattice, box_size)
}

/// Hilbert basis of the monoid `ring_lattice cap dual cone` within the box:
/// the nonzero elements that do not split as a sum of two nonzero monoid
/// elements. Retries with a doubled box are the caller's choice; this is a
/// single exact scan.
pub fn hilbert_ring_generators(
    cone: &Cone,
    ring_lattice: &QLattice,
    box_size: &Int,
) -> Result<Vec<RatVec>, LatticeError> {
    if !cone.is_full_dimensional() {
        return Err(LatticeError::NotFullDimensional);
    }
    let zeros = vec![Rat::zero(); cone.ray_count()];
    let nonzero: Vec<(RatVec, RatVec)> = module_points(&zeros, cone, ring_lattice, box_size)?
        .into_iter()
        .filter(|(_, y)| y.iter().any(|c| !c.is_zero()))
        .collect();
    let mut basis: Vec<RatVec> = Vec::new();
    for (u, y) in &nonzero {
        let splits = nonzero.iter().any(|(_, wy)| {
            let diff = sub_rr(y, wy);
            diff.iter().all(|c| !c.is_negative()) && diff.iter().any(|c| !c.is_zero())
        });
        if !splits {
            basis.push(u.clone());
        }
    }
    basis.sort_by(|a, b| lex_cmp(a, b));
    Ok(basis)
}

/// Componentwise ray-order comparison helper shared by the callers that
/// verify idempotence: returns true when `a` lies in `b + dual cone`.
pub fn ray_dominates(cone: &Cone, a: &[Rat], b: &[Rat]) -> bool {
    let ya = ray_coordinates(a, cone.rays());
    let yb = ray_coordinates(b, cone.rays());
    dominates(&yb, &ya)
}

/// Shifts `m` by the rational vector `delta` (used when re-rooting module
/// scans at a found generator).
pub fn shifted(m: &[Rat], delta: &[Rat]) -> RatVec {
    add_rr(m, delta)
}
