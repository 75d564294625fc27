//! Multiplicity reweighting of an orbifold chart: the closed-form bundle
//! image, its brute-force lattice oracle, and a graded Hom comparison.
//!
//! A reweighting keeps the fan and turns each ray multiplicity `s_i` into
//! `r_i >= s_i`. Bundles transfer by the per-ray ceiling `f_i =
//! ceil(m_i r_i / s_i)`, and the image generator must be the minimal point
//! of the shifted module on the target lattice, which the brute-force scan
//! recomputes here from scratch. Graded Homs between any two bundles agree
//! across the map, degree by degree.
//!
//! Run with `cargo run --example reweight_roundtrip`.

use toric_dk::fm::{fm_case1, hom_graded_compare, HomVerdict};
use toric_dk::ratlat::vecs::{int, ivec, rat, rvec_str};
use toric_dk::ratlat::{min_shifted_generator_auto, Cone, QLattice, Rat};
use toric_dk::stacky::{build_config, BirationalCase, MonomialLineBundle};

fn main() {
    // Two-dimensional chart; multiplicities (2, 3) reweighted to (4, 6).
    let config = build_config(
        BirationalCase::Reweight,
        2,
        2,
        2,
        vec![],
        vec![int(4), int(6)],
        Some(vec![int(2), int(3)]),
    )
    .unwrap();

    let m = ivec(&[3, -5]);
    let image = fm_case1(&m, &config).unwrap();
    println!("bundle ({}, {}) maps to numerators {:?}", m[0], m[1], image.target.k());
    for g in &image.chart_generators {
        println!("chart generator: {}", rvec_str(g));
    }

    // Oracle: the generator is the unique minimal lattice point of the
    // module shifted by (m_i / s_i) on the target lattice (1/r_i) Z^n.
    let shift: Vec<Rat> = (0..2)
        .map(|i| Rat::new(m[i].clone(), config.s()[i].clone()))
        .collect();
    let lattice = QLattice::diagonal(&[rat(1, 4), rat(1, 6)]).unwrap();
    let oracle = min_shifted_generator_auto(&shift, &Cone::orthant(2), &lattice).unwrap();
    assert_eq!(Some(&oracle), image.chart_generators.first());
    println!("brute-force oracle agrees: {}", rvec_str(&oracle));

    // Graded Homs between two bundles match their images' Homs degree by
    // degree; the comparison below checks every degree in a box.
    let l = MonomialLineBundle::new(vec![int(3), int(-5)]);
    let l2 = MonomialLineBundle::new(vec![int(0), int(7)]);
    let report = hom_graded_compare(&l2, &l, &config, Some(int(20))).unwrap();
    println!("hom comparison verdict: {:?}", report.verdict());
    assert_eq!(report.verdict(), HomVerdict::Bijective);
}
