//! The range window of a flip: which bundles cross the wall, their images,
//! and the per-stratum twist checks.
//!
//! A flip transfers a bundle unchanged in its numerators, but only bundles
//! whose weighted statistic lies in `[0, bound)` are in range. The example
//! sweeps twists of one bundle through the window, shows where the window
//! closes, and runs the stratum-wise twist check that certifies the
//! comparison of both sides on every torus stratum.
//!
//! Run with `cargo run --example flip_window`.

use toric_dk::fm::{fm_case3, range_check, stratum_twist_range_check};
use toric_dk::ratlat::vecs::{int, rat_str};
use toric_dk::stacky::{build_config, crepancy_compare, BirationalCase, MonomialLineBundle};

fn main() {
    // An asymmetric flip: weights (2, 1, -1) with nontrivial multiplicities.
    let config = build_config(
        BirationalCase::Flip,
        3,
        2,
        2,
        vec![int(2), int(1), int(-1)],
        vec![int(2), int(1), int(2), int(1)],
        None,
    )
    .unwrap();

    let (class, sum) = crepancy_compare(&config);
    println!("crepancy class {:?}, sum {}", class, rat_str(&sum));

    // Sweep the first-ray twist through and past the window.
    for t in 0..4 {
        let l = MonomialLineBundle::new(vec![int(t), int(0), int(0), int(0)]);
        let (ok, stat) = range_check(&l, &config).unwrap();
        println!("twist {}: statistic {}, in range: {}", t, rat_str(&stat), ok);
        if !ok {
            continue;
        }
        let image = fm_case3(&l, &config).unwrap();
        println!(
            "  image numerators {:?}, exceptional twist {}",
            image.target.k(),
            image.w_twist.map(|w| rat_str(&w)).unwrap_or_default(),
        );
    }

    // Stratum checks for an in-range bundle: every stratum drawn from the
    // negative-weight tail rays, with both signs of the boundary rounding.
    // One tail ray always stays free to renormalize the twist.
    let l = MonomialLineBundle::new(vec![int(0), int(0), int(0), int(0)]);
    let strata: [(Vec<usize>, Vec<bool>); 5] = [
        (vec![], vec![]),
        (vec![2], vec![false]),
        (vec![2], vec![true]),
        (vec![3], vec![false]),
        (vec![3], vec![true]),
    ];
    for (stratum, eps) in &strata {
        let ok = stratum_twist_range_check(&config, stratum, &l, eps).unwrap();
        assert!(ok, "stratum {:?} eps {:?}", stratum, eps);
    }
    println!("all stratum twist checks pass for the trivial bundle");
}
