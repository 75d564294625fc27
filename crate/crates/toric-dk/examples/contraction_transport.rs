//! A crepant weighted extraction: pullback bookkeeping, bundle transport,
//! and the exceptional numerator formula.
//!
//! The configuration contracts the exceptional ray `(1, 2)` of multiplicity
//! one onto the orbifold plane with multiplicities `(3, 3)`. Its crepancy
//! sum is zero, so the log canonical divisor pulls back on the nose, and
//! every bundle transports with an unconditional sheaf certificate.
//!
//! Run with `cargo run --example contraction_transport`.

use toric_dk::fm::{fm_case2, hom_graded_compare, HomVerdict, VanishingCertificate};
use toric_dk::ratlat::vecs::{int, rat_str, rvec_str};
use toric_dk::stacky::{
    build_config, crepancy_compare, fans_of, log_canonical, pullback_divisor, BirationalCase,
    CrepancyClass, MonomialLineBundle, PullbackMap,
};

fn main() {
    let config = build_config(
        BirationalCase::Contraction,
        2,
        2,
        2,
        vec![int(1), int(2)],
        vec![int(3), int(3), int(1)],
        None,
    )
    .unwrap();

    let (class, sum) = crepancy_compare(&config);
    println!("crepancy class {:?}, sum {}", class, rat_str(&sum));
    assert_eq!(class, CrepancyClass::Equal);

    // The log canonical divisor of the base pulls back to the log canonical
    // divisor of the extraction exactly when the crepancy sum vanishes.
    let (fan_x, fan_y, _) = fans_of(&config);
    let pulled = pullback_divisor(&config, PullbackMap::AlongContraction, &log_canonical(&fan_y))
        .unwrap();
    let difference = log_canonical(&fan_x).sub(&pulled);
    println!("pullback difference is zero: {}", difference.is_zero());
    assert!(difference.is_zero());

    // Transport a bundle: the exceptional numerator is the ceiling of the
    // weighted numerator sum scaled by the exceptional multiplicity.
    let l = MonomialLineBundle::new(vec![int(2), int(-1)]);
    let image = fm_case2(&l, &config).unwrap();
    println!("bundle {:?} extends to {:?}", l.k(), image.target.k());
    if let VanishingCertificate::Crepancy { sum } = &image.vanishing_certificate {
        println!("certificate: crepancy sum {}", rat_str(sum));
    }
    for (c, g) in image.chart_generators.iter().enumerate() {
        println!("  chart {} generator {}", c, rvec_str(g));
    }

    // Graded Homs agree between the contracted side and the extraction.
    let l2 = MonomialLineBundle::new(vec![int(0), int(1)]);
    let report = hom_graded_compare(&l2, &l, &config, Some(int(24))).unwrap();
    println!("hom comparison verdict: {:?}", report.verdict());
    assert_eq!(report.verdict(), HomVerdict::Bijective);
}
