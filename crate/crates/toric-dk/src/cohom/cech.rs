//! Čech complexes on the maximal-cone cover, grouped by ray sign patterns.
//!
//! For a fixed integer divisor, whether a degree `m` contributes the ground
//! field at a cone subset depends only on the bits `b_i = [⟨m, v_i⟩ ≥ −c_i]`
//! over the rays. Cohomology is therefore computed once per pattern; a box
//! scan reduces to an emptiness test or an enumeration of each pattern's
//! degree region, so verifying a vanishing claim never walks the full box.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::ratlat::lp;
use crate::ratlat::mat::RatMat;
use crate::ratlat::vecs::dot_ii;
use crate::ratlat::{Int, IntVec, LinearRegion, Rat};
use crate::stacky::{QDivisor, StackyFan};

/// Exponential pattern and subset enumerations stay exact only while they
/// stay small; the configuration fans have at most a handful of rays.
const MAX_RAYS: usize = 16;
const MAX_CONES: usize = 12;

/// Result of a box scan for nonzero higher cohomology.
///
/// An empty witness list verifies the vanishing claim for every degree in
/// the box; the report always states the box, the evidence is partial.
/// Totals and witnesses cover `p >= p_min` only; cohomology below the
/// scanned range is deliberately left out of the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechReport {
    /// Integer divisor coefficients, indexed by ray.
    pub divisor: Vec<Int>,
    /// Half-width of the scanned degree box.
    pub box_radius: Int,
    /// Total cohomology dimension found in the box, indexed by `p`.
    pub totals: Vec<Int>,
    /// Every `(degree, p)` in the box with nonzero `H^p`, sorted.
    pub witnesses: Vec<(IntVec, usize)>,
}

impl CechReport {
    /// True when the scan found no cohomology in the requested range.
    pub fn verified(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Dimensions of the graded pieces `H^p(X, O(D))_m`, indexed by `p`.
///
/// The complex has one term per nonempty subset `S` of the maximal cones,
/// equal to the ground field exactly when `⟨m, v_i⟩ ≥ −c_i` holds for every
/// ray `i` of the intersection of the cones in `S`, with the usual Čech
/// differentials. Ranks are exact rational ranks.
///
/// Panics if the divisor is not integral on the fan's rays or `m` has the
/// wrong length.
pub fn cech_graded_dim(fan: &StackyFan, d: &QDivisor, m: &[Int]) -> Vec<Int> {
    let coeffs = integer_coefficients(fan, d);
    assert_eq!(
        m.len(),
        fan.ambient_rank(),
        "degree length does not match the fan rank"
    );
    let masks = cone_ray_masks(fan);
    pattern_dims(&masks, degree_pattern(fan, &coeffs, m))
}

/// Scans every degree in the box `|m_j| ≤ box_radius` and reports all
/// degrees with nonzero `H^p` for `p ≥ p_min`.
///
/// Degrees are grouped by ray sign pattern, so boxes far larger than any
/// enumerable point set stay cheap whenever the claim actually holds: each
/// failing pattern's region is refuted by a rational feasibility test or an
/// exact walk, and only regions that really carry cohomology are listed.
///
/// Panics under the same conditions as [`cech_graded_dim`].
pub fn verify_vanishing(fan: &StackyFan, d: &QDivisor, box_radius: &Int, p_min: usize) -> CechReport {
    let coeffs = integer_coefficients(fan, d);
    let n_rays = fan.ray_count();
    assert!(n_rays <= MAX_RAYS, "pattern scan is exponential in the ray count");
    let masks = cone_ray_masks(fan);
    let n_cones = masks.len();
    let mut totals = vec![Int::zero(); n_cones];
    let mut witnesses: Vec<(IntVec, usize)> = Vec::new();
    for ok in 0u64..(1u64 << n_rays) {
        let dims = pattern_dims(&masks, ok);
        if dims.iter().skip(p_min).all(|h| h.is_zero()) {
            continue;
        }
        if !pattern_rationally_feasible(fan, &coeffs, ok, box_radius) {
            continue;
        }
        let degrees = pattern_region(fan, &coeffs, ok, box_radius)
            .enumerate()
            .expect("boxed region is bounded");
        if degrees.is_empty() {
            continue;
        }
        let count = Int::from(degrees.len() as u64);
        for (p, h) in dims.iter().enumerate().skip(p_min) {
            if h.is_zero() {
                continue;
            }
            totals[p] += h * &count;
            for degree in &degrees {
                witnesses.push((degree.clone(), p));
            }
        }
    }
    witnesses.sort();
    CechReport {
        divisor: coeffs,
        box_radius: box_radius.clone(),
        totals,
        witnesses,
    }
}

/// Dense integer coefficients of `d` over the fan's rays.
fn integer_coefficients(fan: &StackyFan, d: &QDivisor) -> Vec<Int> {
    assert!(
        d.support().iter().all(|&i| i < fan.ray_count()),
        "divisor is supported outside the fan's rays"
    );
    (0..fan.ray_count())
        .map(|i| {
            let c = d.coefficient(i);
            assert!(c.is_integer(), "divisor coefficient {i} is not an integer");
            c.to_integer()
        })
        .collect()
}

/// One bitmask per maximal cone, bit `i` set when ray `i` lies in the cone.
fn cone_ray_masks(fan: &StackyFan) -> Vec<u64> {
    assert!(fan.ray_count() <= MAX_RAYS, "too many rays for the bitmask");
    assert!(
        fan.max_cones().len() <= MAX_CONES,
        "too many maximal cones for the subset enumeration"
    );
    fan.max_cones()
        .iter()
        .map(|cone| cone.iter().fold(0u64, |acc, &i| acc | (1u64 << i)))
        .collect()
}

/// The sign pattern of a degree: bit `i` set when `⟨m, v_i⟩ ≥ −c_i`.
fn degree_pattern(fan: &StackyFan, coeffs: &[Int], m: &[Int]) -> u64 {
    let mut ok = 0u64;
    for i in 0..fan.ray_count() {
        if dot_ii(m, fan.ray(i)) >= -&coeffs[i] {
            ok |= 1u64 << i;
        }
    }
    ok
}

/// Cohomology dimensions of the pattern's Čech complex, indexed by `p`.
///
/// The member subsets form an upward-closed family (deeper intersections
/// impose fewer ray conditions), so the restricted differentials still
/// square to zero and `H^p = dim C^p − rank d^p − rank d^{p−1}`.
fn pattern_dims(cone_masks: &[u64], ok: u64) -> Vec<Int> {
    let n_cones = cone_masks.len();
    let bad = !ok;
    let mut bases: Vec<Vec<u32>> = vec![Vec::new(); n_cones];
    for s in 1u32..(1u32 << n_cones) {
        let common = cone_masks
            .iter()
            .enumerate()
            .filter(|(c, _)| s & (1u32 << c) != 0)
            .fold(u64::MAX, |acc, (_, mask)| acc & mask);
        if common & bad == 0 {
            bases[s.count_ones() as usize - 1].push(s);
        }
    }
    let pos: Vec<HashMap<u32, usize>> = bases
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let mut ranks = vec![0usize; n_cones];
    for p in 0..n_cones.saturating_sub(1) {
        let rows = &bases[p + 1];
        let cols = &bases[p];
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let mut mat = RatMat::zeros(rows.len(), cols.len());
        for (ri, &t) in rows.iter().enumerate() {
            let mut j = 0usize;
            for b in 0..n_cones {
                if t & (1u32 << b) == 0 {
                    continue;
                }
                if let Some(&ci) = pos[p].get(&(t & !(1u32 << b))) {
                    let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
                    mat.set(ri, ci, sign);
                }
                j += 1;
            }
        }
        ranks[p] = mat.rank();
    }
    (0..n_cones)
        .map(|p| {
            let below = if p == 0 { 0 } else { ranks[p - 1] };
            Int::from((bases[p].len() - ranks[p] - below) as u64)
        })
        .collect()
}

/// The integer degrees in the box whose sign pattern is exactly `ok`.
fn pattern_region(fan: &StackyFan, coeffs: &[Int], ok: u64, box_radius: &Int) -> LinearRegion {
    let mut region = LinearRegion::new(fan.ambient_rank());
    for i in 0..fan.ray_count() {
        let bound = Rat::from_integer(-&coeffs[i]);
        if ok & (1u64 << i) != 0 {
            region.add_lower(fan.ray(i).clone(), &bound);
        } else {
            region.add_strict_complement_of_lower(fan.ray(i).clone(), &bound);
        }
    }
    region.add_box(box_radius);
    region
}

/// Rational relaxation of the pattern region; infeasibility certifies that
/// the region holds no integer point, which is the common case when a
/// vanishing claim is true.
fn pattern_rationally_feasible(fan: &StackyFan, coeffs: &[Int], ok: u64, box_radius: &Int) -> bool {
    let dim = fan.ambient_rank();
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for i in 0..fan.ray_count() {
        let w: Vec<Rat> = fan.ray(i).iter().map(|x| Rat::from_integer(x.clone())).collect();
        if ok & (1u64 << i) != 0 {
            rows.push((w, Rat::from_integer(-&coeffs[i])));
        } else {
            // Strict complement on integers: ⟨m, v_i⟩ ≤ c_i − 1.
            let neg: Vec<Rat> = w.iter().map(|x| -x).collect();
            rows.push((neg, Rat::from_integer(&coeffs[i] - Int::one())));
        }
    }
    let radius = Rat::from_integer(box_radius.clone());
    for j in 0..dim {
        let mut w = vec![Rat::zero(); dim];
        w[j] = Rat::one();
        let neg: Vec<Rat> = w.iter().map(|x| -x).collect();
        rows.push((w, -radius.clone()));
        rows.push((neg, -radius.clone()));
    }
    lp::feasible(dim, &rows)
}
