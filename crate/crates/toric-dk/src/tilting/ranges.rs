//! Exact enumeration of the line bundle classes inside the range window.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::fm::{flip_window_bound, inverse_window_bound};
use crate::ratlat::mat::{hnf, IntMat};
use crate::ratlat::vecs::{ceil, floor};
use crate::ratlat::{Int, IntVec, Rat};
use crate::stacky::{fans_of, normal_form, BirationalCase, BirationalConfig, MonomialLineBundle};

use super::TiltingError;

/// All isomorphism classes of monomial line bundles inside the range
/// window, as normal forms sorted by numerator list.
///
/// Two bundles are isomorphic exactly when their numerator lists differ by
/// an element of the relation lattice spanned by `(r_i ⟨u, v_i⟩)_i`. The
/// coordinate rays make that lattice triangular on the coordinate rows, so
/// every class has a unique representative with coordinate entries reduced
/// into `[0, pivot)` and a free exceptional entry. The range statistic is
/// constant on classes and affine in the free entry with nonzero slope,
/// which turns the window into an exact integer interval per reduced tuple;
/// the union over tuples is therefore complete and duplicate-free.
pub fn enumerate_range_classes(
    config: &BirationalConfig,
) -> Result<Vec<MonomialLineBundle>, TiltingError> {
    let (window_lo, lo_strict, window_hi, hi_strict) = match config.case() {
        BirationalCase::Flip => (Rat::zero(), false, flip_window_bound(config), true),
        BirationalCase::InverseContraction => {
            (-inverse_window_bound(config), true, Rat::zero(), false)
        }
        _ => {
            return Err(TiltingError::ConfigMismatch {
                expected: "a flip or inverse contraction configuration",
            })
        }
    };
    let (fan_x, _, _) = fans_of(config);
    let rays = fan_x.ray_count();
    let dim = fan_x.ambient_rank();
    let cols: Vec<IntVec> = (0..dim)
        .map(|u| {
            (0..rays)
                .map(|i| &fan_x.ray(i)[u] * fan_x.mult(i))
                .collect()
        })
        .collect();
    let (h, rank) = hnf(&IntMat::from_columns(rays, &cols));
    assert_eq!(rank, dim, "fan rays span the ambient space");
    let pivot_rows: Vec<usize> = (0..dim)
        .map(|j| (0..rays).find(|&i| !h.get(i, j).is_zero()).expect("column of full-rank matrix"))
        .collect();
    let free_row = (0..rays)
        .find(|i| !pivot_rows.contains(i))
        .expect("corank-one relation lattice");
    let a_full = config.a_full();
    let r = config.r();
    let weight = |i: usize| Rat::new(a_full[i].clone(), r[i].clone());
    let step = weight(free_row);
    assert!(!step.is_zero(), "the free row carries the exceptional weight");
    let sizes: Vec<u64> = (0..dim)
        .map(|j| {
            h.get(pivot_rows[j], j)
                .to_u64()
                .expect("pivot fits in machine range")
        })
        .collect();
    assert!(
        sizes.iter().product::<u64>() <= 1_000_000,
        "class torsion is enumerable"
    );
    let mut out: BTreeSet<IntVec> = BTreeSet::new();
    let mut tuple = vec![0u64; dim];
    loop {
        let mut c = Rat::zero();
        for (j, &x) in tuple.iter().enumerate() {
            c += weight(pivot_rows[j]) * Rat::from_integer(Int::from(x));
        }
        if let Some((t_min, t_max)) =
            integer_interval(&c, &step, &window_lo, lo_strict, &window_hi, hi_strict)
        {
            let mut t = t_min;
            while t <= t_max {
                let mut k = vec![Int::zero(); rays];
                for (j, &x) in tuple.iter().enumerate() {
                    k[pivot_rows[j]] = Int::from(x);
                }
                k[free_row] = t.clone();
                let nf = normal_form(&fan_x, &MonomialLineBundle::new(k));
                debug_assert!(
                    matches!(crate::fm::range_check(&nf, config), Ok((true, _))),
                    "constructed representative lies in the window"
                );
                out.insert(nf.k().to_vec());
                t += Int::from(1);
            }
        }
        let mut digit = 0usize;
        loop {
            if digit == dim {
                let list = out.into_iter().map(MonomialLineBundle::new).collect();
                return Ok(list);
            }
            tuple[digit] += 1;
            if tuple[digit] < sizes[digit] {
                break;
            }
            tuple[digit] = 0;
            digit += 1;
        }
    }
}

/// The integers `t` with `c + t·s` inside the window, each end inclusive or
/// strict per its flag; `s` must be nonzero. `None` when no integer fits.
fn integer_interval(
    c: &Rat,
    s: &Rat,
    lo: &Rat,
    lo_strict: bool,
    hi: &Rat,
    hi_strict: bool,
) -> Option<(Int, Int)> {
    let q_lo = (lo - c) / s;
    let q_hi = (hi - c) / s;
    let (q_min, min_strict, q_max, max_strict) = if s.is_positive() {
        (q_lo, lo_strict, q_hi, hi_strict)
    } else {
        (q_hi, hi_strict, q_lo, lo_strict)
    };
    let t_min = if min_strict {
        floor(&q_min) + Int::from(1)
    } else {
        ceil(&q_min)
    };
    let t_max = if max_strict {
        ceil(&q_max) - Int::from(1)
    } else {
        floor(&q_max)
    };
    (t_min <= t_max).then_some((t_min, t_max))
}
