//! Graded Hom comparison between the two sides of a configuration.
//!
//! Hom spaces between monomial line bundles are graded by the coarse
//! integer lattice: degree `u` supports a hom exactly when every ray
//! pairing clears the rounded lower bound `<u, v_i> >= -floor(dk_i / r_i)`,
//! where `dk` is the numerator difference of the pair. Each side of the map
//! contributes one such constraint system over its own rays; the comparison
//! enumerates the degrees inside a finite box where exactly one side
//! supports a hom, so a `Bijective` verdict is exact within the box.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::cases::{fm_case1, fm_case2, range_check};
use super::FmError;
use crate::ratlat::scan::LinearRegion;
use crate::ratlat::vecs::{dot_ii, floor_div};
use crate::ratlat::{Int, IntVec, Rat};
use crate::stacky::{BirationalCase, BirationalConfig, MonomialLineBundle};

/// A constraint `w . u >= lo` on integer degrees.
type Row = (IntVec, Int);

/// Outcome of comparing the graded Hom spaces of a bundle pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomVerdict {
    /// The two sides support homs in exactly the same degrees.
    Bijective,
    /// Every source degree appears on the target side, but not conversely.
    InjectiveOnly,
    /// Some source degree is missing from the target side.
    Mismatch,
}

/// Degree-by-degree comparison of the Hom spaces on the two sides.
///
/// The full table is determined by the two stored constraint systems;
/// [`GradedHomReport::dims_at`] evaluates it at any degree. The difference
/// lists record every in-box degree where the sides disagree, so they are
/// empty exactly when the verdict is `Bijective`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHomReport {
    box_radius: Int,
    source_rows: Vec<Row>,
    target_rows: Vec<Row>,
    source_only: Vec<IntVec>,
    target_only: Vec<IntVec>,
    verdict: HomVerdict,
}

impl GradedHomReport {
    /// Radius of the degree box that was scanned.
    pub fn box_radius(&self) -> &Int {
        &self.box_radius
    }

    /// Constraint system cutting out the source-side hom degrees.
    pub fn source_rows(&self) -> &[Row] {
        &self.source_rows
    }

    /// Constraint system cutting out the target-side hom degrees.
    pub fn target_rows(&self) -> &[Row] {
        &self.target_rows
    }

    /// In-box degrees supporting a hom on the source side only.
    pub fn source_only(&self) -> &[IntVec] {
        &self.source_only
    }

    /// In-box degrees supporting a hom on the target side only.
    pub fn target_only(&self) -> &[IntVec] {
        &self.target_only
    }

    pub fn verdict(&self) -> HomVerdict {
        self.verdict
    }

    /// Hom dimensions `(source, target)` in degree `u`; each is 0 or 1.
    pub fn dims_at(&self, u: &[Int]) -> (u8, u8) {
        let member = |rows: &[Row]| rows.iter().all(|(w, lo)| dot_ii(w, u) >= *lo);
        (
            member(&self.source_rows) as u8,
            member(&self.target_rows) as u8,
        )
    }
}

/// Lower-bound row `u_i >= lo` on one coordinate.
fn unit_row(n: usize, i: usize, lo: Int) -> Row {
    let mut w = vec![Int::zero(); n];
    w[i] = Int::one();
    (w, lo)
}

/// Rounded hom bound for one ray: `-floor((k_i - k2_i) / r_i)`.
fn hom_bound(k: &Int, k2: &Int, r: &Int) -> Int {
    -floor_div(&(k - k2), r)
}

/// Builds the source and target constraint systems for a bundle pair.
fn hom_row_systems(
    l_prime: &MonomialLineBundle,
    l: &MonomialLineBundle,
    config: &BirationalConfig,
) -> Result<(Vec<Row>, Vec<Row>), FmError> {
    let n = config.n();
    let r = config.r();
    match config.case() {
        BirationalCase::Reweight => {
            let f = fm_case1(l.k(), config)?;
            let f2 = fm_case1(l_prime.k(), config)?;
            let s = config.s();
            let mut source = Vec::with_capacity(n);
            let mut target = Vec::with_capacity(n);
            for i in 0..n {
                source.push(unit_row(n, i, hom_bound(&l.k()[i], &l_prime.k()[i], &s[i])));
                target.push(unit_row(
                    n,
                    i,
                    hom_bound(&f.target.k()[i], &f2.target.k()[i], &r[i]),
                ));
            }
            Ok((source, target))
        }
        BirationalCase::Contraction => {
            let f = fm_case2(l, config)?;
            let f2 = fm_case2(l_prime, config)?;
            let mut source = Vec::with_capacity(n);
            for i in 0..n {
                source.push(unit_row(n, i, hom_bound(&l.k()[i], &l_prime.k()[i], &r[i])));
            }
            let mut target = source.clone();
            target.push((
                config.a().to_vec(),
                hom_bound(&f.target.k()[n], &f2.target.k()[n], &r[n]),
            ));
            Ok((source, target))
        }
        BirationalCase::Flip => {
            require_in_range(l, config)?;
            require_in_range(l_prime, config)?;
            let rows = full_ray_rows(l_prime, l, config);
            Ok((rows.clone(), rows))
        }
        BirationalCase::InverseContraction => {
            require_in_range(l, config)?;
            require_in_range(l_prime, config)?;
            let source = full_ray_rows(l_prime, l, config);
            let target = source[..n].to_vec();
            Ok((source, target))
        }
    }
}

/// Constraint rows over all `n + 1` rays of the exceptional-side fan.
fn full_ray_rows(
    l_prime: &MonomialLineBundle,
    l: &MonomialLineBundle,
    config: &BirationalConfig,
) -> Vec<Row> {
    let n = config.n();
    let r = config.r();
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..n {
        rows.push(unit_row(n, i, hom_bound(&l.k()[i], &l_prime.k()[i], &r[i])));
    }
    rows.push((
        config.a().to_vec(),
        hom_bound(&l.k()[n], &l_prime.k()[n], &r[n]),
    ));
    rows
}

/// Errors unless the bundle sits inside its case's range window.
fn require_in_range(l: &MonomialLineBundle, config: &BirationalConfig) -> Result<(), FmError> {
    let (ok, stat) = range_check(l, config)?;
    if ok {
        return Ok(());
    }
    let err = match config.case() {
        BirationalCase::InverseContraction => FmError::OutOfRange {
            statistic: -stat,
            bound: inverse_bound(config),
        },
        _ => FmError::OutOfRange {
            statistic: stat,
            bound: flip_bound(config),
        },
    };
    Err(err)
}

fn flip_bound(config: &BirationalConfig) -> Rat {
    let a = config.a_full();
    let r = config.r();
    let mut acc = Rat::zero();
    for i in config.n_dprime()..=config.n() {
        acc += Rat::new(a[i].clone(), r[i].clone());
    }
    -acc
}

fn inverse_bound(config: &BirationalConfig) -> Rat {
    let a = config.a();
    let r = config.r();
    let mut acc = Rat::zero();
    for i in 0..config.n() {
        acc += Rat::new(a[i].clone(), r[i].clone());
    }
    acc
}

/// Rows of `of` that have no exact counterpart in `among`.
fn rows_missing_from(of: &[Row], among: &[Row]) -> Vec<Row> {
    of.iter()
        .filter(|row| !among.contains(row))
        .cloned()
        .collect()
}

/// Degrees satisfying all of `base` while violating at least one row of
/// `missing`, within the box.
fn one_sided_difference(
    dim: usize,
    base: &[Row],
    missing: &[Row],
    radius: &Int,
) -> Vec<IntVec> {
    let mut acc: BTreeSet<IntVec> = BTreeSet::new();
    for (w, lo) in missing {
        let mut region = LinearRegion::new(dim);
        for (bw, blo) in base {
            region.add_lower(bw.clone(), &Rat::from(blo.clone()));
        }
        region.add_strict_complement_of_lower(w.clone(), &Rat::from(lo.clone()));
        region.add_box(radius);
        for p in region.enumerate().expect("the box keeps the scan finite") {
            acc.insert(p);
        }
    }
    acc.into_iter().collect()
}

fn verdict_from(source_only: &[IntVec], target_only: &[IntVec]) -> HomVerdict {
    if !source_only.is_empty() {
        HomVerdict::Mismatch
    } else if !target_only.is_empty() {
        HomVerdict::InjectiveOnly
    } else {
        HomVerdict::Bijective
    }
}

/// Default degree box: `8 * max(r_i) * max(|k_i| + 1)` over both bundles.
fn default_hom_box(
    config: &BirationalConfig,
    l_prime: &MonomialLineBundle,
    l: &MonomialLineBundle,
) -> Int {
    let rmax = config.r().iter().max().cloned().unwrap_or_else(Int::one);
    let kmax = l
        .k()
        .iter()
        .chain(l_prime.k().iter())
        .map(|k| k.abs() + Int::one())
        .max()
        .unwrap_or_else(Int::one);
    Int::from(8) * rmax * kmax
}

/// Compares the graded Hom spaces of `Hom(L', L)` on the two sides.
///
/// The source system always lives on the side the input bundles inhabit
/// and the target system on the image side. For flip and inverse
/// contraction configurations both bundles must sit in the range window.
/// Without an explicit `box_radius` the default box is
/// `8 * max(r_i) * max(|k_i| + 1)`.
pub fn hom_graded_compare(
    l_prime: &MonomialLineBundle,
    l: &MonomialLineBundle,
    config: &BirationalConfig,
    box_radius: Option<Int>,
) -> Result<GradedHomReport, FmError> {
    let (source_rows, target_rows) = hom_row_systems(l_prime, l, config)?;
    let radius = box_radius.unwrap_or_else(|| default_hom_box(config, l_prime, l));
    let dim = config.n();
    let target_extra = rows_missing_from(&target_rows, &source_rows);
    let source_extra = rows_missing_from(&source_rows, &target_rows);
    let source_only = one_sided_difference(dim, &source_rows, &target_extra, &radius);
    let target_only = one_sided_difference(dim, &target_rows, &source_extra, &radius);
    let verdict = verdict_from(&source_only, &target_only);
    Ok(GradedHomReport {
        box_radius: radius,
        source_rows,
        target_rows,
        source_only,
        target_only,
        verdict,
    })
}
