//! End-to-end acceptance checks, one per headline property, each with an
//! explicit wall-clock budget. Every check prints a single PASS line with
//! its timing (visible under `--nocapture`); a failed assertion or a blown
//! budget fails the test.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use toric_dk::cli::sample::{
    charts_match_oracle, sample_contraction, sample_degree, sample_flip,
    sample_inverse_contraction, sample_reweight, sample_window_bundle,
};
use toric_dk::cohom::{rounded_hom_sheaf, verify_vanishing, Side};
use toric_dk::fm::{
    ceiling_identity_check, hom_graded_compare, stratum_twist_range_check, HomVerdict,
};
use toric_dk::ratlat::vecs::{int, ivec, rat, rvec};
use toric_dk::ratlat::{Int, Sublattice};
use toric_dk::stacky::{
    build_config, crepancy_compare, discrepancy_of_ray, fans_of, hj_resolution, log_canonical,
    pullback_divisor, BirationalCase, BirationalConfig, MonomialLineBundle, PullbackMap, QDivisor,
    StackyError, StackyFan,
};
use toric_dk::tilting::{build_tilting, enumerate_range_classes};

fn finish(name: &str, budget_ms: u128, start: Instant) {
    let elapsed = start.elapsed().as_millis();
    println!("PASS {name}: {elapsed} ms (budget {budget_ms} ms)");
    assert!(
        elapsed <= budget_ms,
        "{name} finished correct but blew its {budget_ms} ms budget: {elapsed} ms"
    );
}

fn flop() -> BirationalConfig {
    build_config(
        BirationalCase::Flip,
        3,
        2,
        2,
        vec![int(1), int(1), int(-1)],
        vec![int(1), int(1), int(1), int(1)],
        None,
    )
    .unwrap()
}

fn stacky_flip() -> BirationalConfig {
    build_config(
        BirationalCase::Flip,
        3,
        2,
        2,
        vec![int(1), int(1), int(-1)],
        vec![int(1), int(1), int(1), int(2)],
        None,
    )
    .unwrap()
}

fn plane_blowup_fan() -> StackyFan {
    StackyFan::new(
        2,
        vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])],
        vec![int(1), int(1), int(1)],
        vec![vec![0, 2], vec![1, 2]],
    )
    .unwrap()
}

#[test]
fn quotient_resolution_ledger_is_exact() {
    let start = Instant::now();
    let ledger = hj_resolution(&int(8), &int(3)).unwrap();
    assert_eq!(ledger.entries.len(), 2, "expected exactly two exceptional rays");
    for entry in &ledger.entries {
        assert_eq!(entry.discrepancy, rat(-1, 2));
    }
    finish("quotient resolution ledger", 1_000, start);
}

#[test]
fn weighted_blowup_is_log_crepant_over_the_fractional_boundary() {
    let start = Instant::now();
    let plane = StackyFan::orthant(2, vec![int(1), int(1)]).unwrap();
    let mut boundary = QDivisor::zero();
    boundary.set(0, rat(2, 3));
    boundary.set(1, rat(2, 3));
    let disc = discrepancy_of_ray(&plane, &boundary, &rvec(&[1, 2]), &[0, 1]).unwrap();
    assert_eq!(disc, rat(0, 1));

    // The chart of the subdivided coarse fan containing the new ray along
    // (1, 0) is an index-two quotient singularity; the other chart is smooth.
    let blowup = StackyFan::new(
        2,
        vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 2])],
        vec![int(1), int(1), int(1)],
        vec![vec![0, 2], vec![1, 2]],
    )
    .unwrap();
    let ambient = Sublattice::standard(2);
    let indices: Vec<Int> = (0..blowup.max_cones().len())
        .map(|c| blowup.chart_lattice(c).index_in(&ambient).unwrap())
        .collect();
    assert_eq!(indices, vec![int(2), int(1)]);
    finish("weighted blowup discrepancy and chart index", 1_000, start);
}

#[test]
fn reweight_transport_is_bijective() {
    let start = Instant::now();
    // Exhaustive ceiling identity over all multiplicity pairs up to 12 and
    // all numerator pairs up to 30 in absolute value.
    let mut checked = 0u64;
    for r in 1..=12i64 {
        for s in 1..=r {
            for m in -30..=30i64 {
                for m2 in -30..=30i64 {
                    assert!(
                        ceiling_identity_check(&int(r), &int(s), &int(m), &int(m2)),
                        "ceiling identity failed at r={r} s={s} m={m} m2={m2}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 78 * 61 * 61);

    // Random reweight configurations: graded Homs must match in every
    // degree of the comparison box.
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    for trial in 0..200 {
        let config = sample_reweight(&mut rng);
        let l = MonomialLineBundle::new(sample_degree(&mut rng, config.n(), 8));
        let l2 = MonomialLineBundle::new(sample_degree(&mut rng, config.n(), 8));
        let report = hom_graded_compare(&l2, &l, &config, Some(int(40))).unwrap();
        assert_eq!(report.verdict(), HomVerdict::Bijective, "trial {trial}");
    }
    finish("ceiling identity and reweight hom comparison", 30_000, start);
}

#[test]
fn contraction_transport_preserves_homs_and_vanishing() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    let scan_box = int(48);
    for trial in 0..100 {
        let config = sample_contraction(&mut rng);
        let lp = MonomialLineBundle::new(sample_degree(&mut rng, config.n(), 3));
        let l = MonomialLineBundle::new(sample_degree(&mut rng, config.n(), 3));
        let report = hom_graded_compare(&lp, &l, &config, Some(int(40))).unwrap();
        assert_eq!(report.verdict(), HomVerdict::Bijective, "trial {trial}");
        let (fan_x, fan_y, _) = fans_of(&config);
        for (a, b) in [(&lp, &l), (&l, &lp)] {
            for (side, fan) in [(Side::X, &fan_x), (Side::Y, &fan_y)] {
                let d = rounded_hom_sheaf(a, b, side, &config).unwrap();
                let scan = verify_vanishing(fan, &d, &scan_box, 1);
                assert!(
                    scan.verified(),
                    "trial {trial} side {side} found witnesses {:?}",
                    scan.witnesses
                );
            }
        }
    }

    // Negative control: the scan itself can see cohomology. Twice the
    // exceptional curve on the blowup of the plane has an H^1 class.
    let mut twice_exceptional = QDivisor::zero();
    twice_exceptional.set(2, rat(2, 1));
    let control = verify_vanishing(&plane_blowup_fan(), &twice_exceptional, &int(8), 1);
    assert!(control.witnesses.iter().any(|(_, p)| *p == 1));
    finish("contraction hom and vanishing suite", 120_000, start);
}

#[test]
fn flop_quiver_matches_the_expected_arrows() {
    let start = Instant::now();
    let config = flop();
    let classes = enumerate_range_classes(&config).unwrap();
    assert_eq!(classes.len(), 2);

    let data = build_tilting(&config, &int(48)).unwrap();
    let keys: Vec<(usize, usize)> = data.arrows.keys().cloned().collect();
    assert_eq!(keys, vec![(0, 1), (1, 0)], "expected two arrow groups and no loops");

    let mut forward = data.arrows[&(0, 1)].clone();
    forward.sort_by(|x, y| toric_dk::ratlat::vecs::lex_cmp(x, y));
    assert_eq!(forward, vec![rvec(&[-1, 1, 0]), rvec(&[0, 0, 0])]);

    let mut backward = data.arrows[&(1, 0)].clone();
    backward.sort_by(|x, y| toric_dk::ratlat::vecs::lex_cmp(x, y));
    assert_eq!(backward, vec![rvec(&[1, 0, 0]), rvec(&[1, 0, 1])]);

    assert!(data.orthogonal(), "orthogonality scan found higher cohomology");
    finish("flop tilting quiver", 10_000, start);
}

#[test]
fn flip_wall_coefficient_equals_the_scaled_crepancy_sum() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(13);
    for trial in 0..200 {
        let config = sample_flip(&mut rng);
        let (_, sum) = crepancy_compare(&config);
        let (fan_x, fan_y, _) = fans_of(&config);
        let over_x =
            pullback_divisor(&config, PullbackMap::ResolutionOverX, &log_canonical(&fan_x))
                .unwrap();
        let over_y =
            pullback_divisor(&config, PullbackMap::ResolutionOverY, &log_canonical(&fan_y))
                .unwrap();
        let wall = config.n() + 1;
        assert_eq!(
            over_x.coefficient(wall) - over_y.coefficient(wall),
            config.lambda() * &sum,
            "trial {trial}"
        );
    }
    finish("flip wall coefficient consistency", 10_000, start);
}

#[test]
fn chart_formulas_agree_with_the_lattice_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(14);
    for trial in 0..1000u32 {
        let (config, k) = match trial % 4 {
            0 => {
                let config = sample_reweight(&mut rng);
                let k = sample_degree(&mut rng, config.n(), 8);
                (config, k)
            }
            1 => {
                let config = sample_contraction(&mut rng);
                let k = sample_degree(&mut rng, config.n(), 4);
                (config, k)
            }
            2 => {
                let config = sample_flip(&mut rng);
                let k = sample_window_bundle(&mut rng, &config, 2, 200);
                (config, k)
            }
            _ => {
                let config = sample_inverse_contraction(&mut rng);
                let k = sample_window_bundle(&mut rng, &config, 2, 200);
                (config, k)
            }
        };
        assert!(charts_match_oracle(&config, &k), "trial {trial}");
    }
    finish("chart formula oracle equivalence", 60_000, start);
}

#[test]
fn stratum_twists_stay_in_range_on_the_flip_fixtures() {
    let start = Instant::now();
    for config in [flop(), stacky_flip()] {
        let classes = enumerate_range_classes(&config).unwrap();
        let tail: Vec<usize> = (config.n_dprime()..=config.n()).collect();
        let free = config.n() - config.n_dprime();
        for l in &classes {
            for mask in 0..(1u32 << tail.len()) {
                let stratum: Vec<usize> = tail
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                if stratum.len() > free {
                    continue;
                }
                for bits in 0..(1u32 << stratum.len()) {
                    let eps: Vec<bool> =
                        (0..stratum.len()).map(|b| bits & (1 << b) != 0).collect();
                    assert!(
                        stratum_twist_range_check(&config, &stratum, l, &eps).unwrap(),
                        "bundle {:?} stratum {:?} eps {:?}",
                        l.k(),
                        stratum,
                        eps
                    );
                }
            }
        }
    }
    finish("stratum twist range checks", 10_000, start);
}

#[test]
fn inverse_contraction_weight_bound_is_the_last_multiplicity_reading() {
    let start = Instant::now();
    let accepted = build_config(
        BirationalCase::InverseContraction,
        2,
        2,
        2,
        vec![int(1), int(1)],
        vec![int(2), int(3), int(1)],
        None,
    );
    assert!(accepted.is_ok(), "5/6 <= 1 must be accepted");

    let rejected = build_config(
        BirationalCase::InverseContraction,
        2,
        2,
        2,
        vec![int(1), int(1)],
        vec![int(2), int(1), int(1)],
        None,
    );
    assert_eq!(
        rejected,
        Err(StackyError::WeightBoundExceeded {
            statistic: rat(3, 2),
            bound: rat(1, 1),
            alternative: rat(1, 1),
        })
    );
    finish("inverse contraction weight bound", 1_000, start);
}
