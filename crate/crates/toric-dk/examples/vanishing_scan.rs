//! Cech cohomology scan over a box of characters, run on the blowup of the
//! plane at a point.
//!
//! The divisor `2E` on the blowup has a one-dimensional `H^1` concentrated
//! in the single character `(-1, -1)`: the class that pairs negatively with
//! both coordinate rays and measures the `(-1)`-curve obstruction. The scan
//! finds exactly that witness; the trivial divisor scans clean.
//!
//! Run with `cargo run --example vanishing_scan`.

use toric_dk::ratlat::vecs::{int, ivec, rat};
use toric_dk::cohom::verify_vanishing;
use toric_dk::stacky::{QDivisor, StackyFan};

fn main() {
    // The blowup of the plane: quadrant subdivided along (1, 1).
    let blowup = StackyFan::new(
        2,
        vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])],
        vec![1.into(), 1.into(), 1.into()],
        vec![vec![0, 2], vec![1, 2]],
    )
    .unwrap();

    let trivial = QDivisor::zero();
    let report = verify_vanishing(&blowup, &trivial, &int(8), 1);
    println!(
        "trivial divisor: totals by degree {:?} (clean: {})",
        report.totals,
        report.verified()
    );
    assert!(report.verified());

    let mut twice_exceptional = QDivisor::zero();
    twice_exceptional.set(2, rat(2, 1));
    let report = verify_vanishing(&blowup, &twice_exceptional, &int(8), 1);
    println!(
        "2E: totals by degree {:?} (clean: {})",
        report.totals,
        report.verified()
    );
    for (m, p) in &report.witnesses {
        println!("  H^{} witness at character ({}, {})", p, m[0], m[1]);
    }
    assert_eq!(report.witnesses.len(), 1);
    assert_eq!(report.witnesses[0], (ivec(&[-1, -1]), 1));
}
