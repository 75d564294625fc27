//! Minimal resolution of a cyclic quotient surface singularity, with the
//! per-ray discrepancy ledger.
//!
//! The exceptional rays follow the negative-regular continued fraction of
//! `n/q`; each entry records the ray, its coordinates in the resolved cone,
//! its log discrepancy, and the self-intersection of the exceptional curve.
//! Every discrepancy of a quotient singularity is strictly between -1 and 0,
//! which the loop checks as it prints.
//!
//! Run with `cargo run --example hj_ledger`.

use num_traits::Signed;
use toric_dk::ratlat::vecs::{int, rat_int, rat_str, rvec_str};
use toric_dk::stacky::hj_resolution;

fn main() {
    for (n, q) in [(8i64, 3i64), (5, 2), (7, 4)] {
        let ledger = hj_resolution(&int(n), &int(q)).unwrap();
        println!("type ({}, {}): {} exceptional rays", n, q, ledger.entries.len());
        for e in &ledger.entries {
            println!(
                "  ray {}  coords {}  discrepancy {}  boundary {}  self-intersection {}",
                rvec_str(&e.ray),
                rvec_str(&e.coefficients),
                rat_str(&e.discrepancy),
                rat_str(&e.boundary_coefficient),
                e.self_intersection,
            );
            assert!(e.discrepancy.is_negative());
            assert!(e.discrepancy > rat_int(-1));
        }
    }
}
