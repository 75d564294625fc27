//! Randomized structural properties, each checked against an independent
//! route: canonical forms against generator shuffles, closed-form counts
//! against enumeration, duality against double duals, and formula output
//! against brute-force rediscovery.

use num_traits::Signed;
use proptest::collection::vec as pvec;
use proptest::prelude::*;

use toric_dk::cohom::verify_vanishing;
use toric_dk::ratlat::vecs::{int, ivec, lex_cmp, rat};
use toric_dk::ratlat::{
    min_shifted_generator_auto, Cone, Int, LinearRegion, QLattice, Sublattice,
};
use toric_dk::stacky::{
    build_config, fans_of, hj_resolution, iso_equivalent, normal_form, BirationalCase,
    MonomialLineBundle, QDivisor, StackyFan,
};

/// Nonsingular 2x2 integer generator sets with small entries.
fn gen_pairs() -> impl Strategy<Value = ([i64; 2], [i64; 2])> {
    ((-6i64..=6, -6i64..=6), (-6i64..=6, -6i64..=6))
        .prop_filter("generators must be independent", |(g, h)| {
            g.0 * h.1 - g.1 * h.0 != 0
        })
        .prop_map(|(g, h)| ([g.0, g.1], [h.0, h.1]))
}

proptest! {
    /// The Hermite basis is canonical: a unimodular reshuffle of the
    /// generators (swap, negate, shear) spans the same sublattice and must
    /// produce the identical basis and determinant.
    #[test]
    fn hermite_basis_is_generator_independent((g, h) in gen_pairs(), c in -3i64..=3) {
        let a = Sublattice::from_generators(2, &[ivec(&g), ivec(&h)]).unwrap();
        let shuffled = [
            ivec(&[h[0], h[1]]),
            ivec(&[-g[0] + c * h[0], -g[1] + c * h[1]]),
        ];
        let b = Sublattice::from_generators(2, &shuffled).unwrap();
        prop_assert_eq!(a.basis_columns(), b.basis_columns());
        prop_assert_eq!(a.det(), b.det());
    }

    /// Double dual is the identity on rational lattices.
    #[test]
    fn dual_is_an_involution((g, h) in gen_pairs()) {
        let lat = QLattice::from_sublattice(
            Sublattice::from_generators(2, &[ivec(&g), ivec(&h)]).unwrap(),
        );
        prop_assert_eq!(lat.dual().dual(), lat);
    }

    /// Duality swaps sum and intersection.
    #[test]
    fn dual_swaps_sum_and_intersection((g, h) in gen_pairs(), (p, q) in gen_pairs()) {
        let a = QLattice::from_sublattice(
            Sublattice::from_generators(2, &[ivec(&g), ivec(&h)]).unwrap(),
        );
        let b = QLattice::from_sublattice(
            Sublattice::from_generators(2, &[ivec(&p), ivec(&q)]).unwrap(),
        );
        let left = a.intersection(&b).unwrap().dual();
        let right = a.dual().sum(&b.dual()).unwrap();
        prop_assert_eq!(left, right);
    }

    /// Indices multiply along chains of sublattices.
    #[test]
    fn index_is_multiplicative((g, h) in gen_pairs(), f in 1i64..=4) {
        let b = Sublattice::from_generators(2, &[ivec(&g), ivec(&h)]).unwrap();
        let scaled = [
            ivec(&[f * g[0], f * g[1]]),
            ivec(&[f * h[0], f * h[1]]),
        ];
        let a = Sublattice::from_generators(2, &scaled).unwrap();
        let c = Sublattice::standard(2);
        let ab = a.index_in(&b).unwrap();
        let bc = b.index_in(&c).unwrap();
        let ac = a.index_in(&c).unwrap();
        prop_assert_eq!(&ab * &bc, ac);
    }

    /// The closed-form point count agrees with full enumeration, and every
    /// enumerated point satisfies every constraint row.
    #[test]
    fn region_count_matches_enumeration(
        rows in pvec((pvec(-4i64..=4, 2), -6i64..=0, 0i64..=6), 1..4),
    ) {
        let mut region = LinearRegion::new(2);
        region.add_box(&int(5));
        for (w, lo, hi) in &rows {
            region.add_two_sided(ivec(w), &rat(*lo, 1), &rat(*hi, 1));
        }
        let pts = region.enumerate().unwrap();
        prop_assert_eq!(int(pts.len() as i64), region.count().unwrap());
        for z in &pts {
            for (w, lo, hi) in &rows {
                let val = int(w[0]) * &z[0] + int(w[1]) * &z[1];
                prop_assert!(int(*lo) <= val && val <= int(*hi));
            }
        }
    }

    /// Lattice points found through the ray-box scan match a direct sweep
    /// of the same window of a diagonal lattice.
    #[test]
    fn ray_box_scan_matches_direct_sweep(
        r1 in 1i64..=4, r2 in 1i64..=4,
        lo1 in -2i64..=0, lo2 in -2i64..=0,
    ) {
        let lat = QLattice::diagonal(&[rat(1, r1), rat(1, r2)]).unwrap();
        let rays = [ivec(&[1, 0]), ivec(&[0, 1])];
        let lo = [rat(lo1, 1), rat(lo2, 1)];
        let hi = [rat(lo1 + 2, 1), rat(lo2 + 2, 1)];
        let scanned = toric_dk::ratlat::scan::lattice_points_in_ray_box(
            &lat, &rays, &lo, &hi,
        ).unwrap();
        let mut direct = Vec::new();
        for p in (lo1 * r1)..=((lo1 + 2) * r1) {
            for q in (lo2 * r2)..=((lo2 + 2) * r2) {
                direct.push(vec![rat(p, r1), rat(q, r2)]);
            }
        }
        direct.sort_by(|a, b| lex_cmp(a, b));
        prop_assert_eq!(scanned, direct);
    }

    /// The minimal shifted generator is idempotent: rerunning the search
    /// shifted at its own output returns the output unchanged.
    #[test]
    fn shifted_generator_search_is_idempotent(
        r1 in 1i64..=6, r2 in 1i64..=6,
        k1 in -8i64..=8, k2 in -8i64..=8,
        s1 in 1i64..=3, s2 in 1i64..=3,
    ) {
        let lat = QLattice::diagonal(&[rat(1, r1), rat(1, r2)]).unwrap();
        let cone = Cone::orthant(2);
        let shift = [rat(k1, s1), rat(k2, s2)];
        let g = min_shifted_generator_auto(&shift, &cone, &lat).unwrap();
        let again = min_shifted_generator_auto(&g, &cone, &lat).unwrap();
        prop_assert_eq!(again, g);
    }

    /// Bundles twisted by a monomial relation are isomorphic, share a
    /// normal form, and the normal form itself is idempotent.
    #[test]
    fn monomial_twists_are_isomorphic(
        k in pvec(-9i64..=9, 3),
        m1 in -3i64..=3, m2 in -3i64..=3,
    ) {
        let fan = StackyFan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])],
            vec![int(2), int(3), int(1)],
            vec![vec![0, 2], vec![1, 2]],
        ).unwrap();
        let l = MonomialLineBundle::new(ivec(&k));
        let twisted: Vec<Int> = (0..3)
            .map(|i| {
                let pairing = &fan.ray(i)[0] * &int(m1) + &fan.ray(i)[1] * &int(m2);
                &l.k()[i] + fan.mult(i) * pairing
            })
            .collect();
        let l2 = MonomialLineBundle::new(twisted);
        prop_assert!(iso_equivalent(&fan, &l2, &l).is_some());
        let nf = normal_form(&fan, &l);
        let nf2 = normal_form(&fan, &l2);
        prop_assert_eq!(nf.k(), nf2.k());
        let twice = normal_form(&fan, &nf);
        prop_assert_eq!(twice.k(), nf.k());
    }

    /// Monomial isomorphism is reflexive and symmetric on random bundles.
    #[test]
    fn iso_equivalence_is_reflexive_and_symmetric(
        k in pvec(-9i64..=9, 3),
        k2 in pvec(-9i64..=9, 3),
    ) {
        let fan = StackyFan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 2])],
            vec![int(1), int(2), int(1)],
            vec![vec![0, 2], vec![1, 2]],
        ).unwrap();
        let l = MonomialLineBundle::new(ivec(&k));
        let l2 = MonomialLineBundle::new(ivec(&k2));
        prop_assert!(iso_equivalent(&fan, &l, &l).is_some());
        prop_assert_eq!(
            iso_equivalent(&fan, &l, &l2).is_some(),
            iso_equivalent(&fan, &l2, &l).is_some()
        );
    }

    /// The structure sheaf of every configuration fan scans clean: the fans
    /// subdivide a single cone, so the varieties are contractible onto an
    /// affine chart and higher cohomology vanishes weight by weight.
    #[test]
    fn structure_sheaf_scans_clean_on_configuration_fans(
        a1 in 1i64..=3, a2 in 1i64..=3,
        r in pvec(1i64..=3, 4),
    ) {
        let config = build_config(
            BirationalCase::Flip,
            3,
            2,
            2,
            vec![int(a1), int(a2), int(-1)],
            r.iter().map(|&x| int(x)).collect(),
            None,
        ).unwrap();
        let (fan_x, fan_y, fan_w) = fans_of(&config);
        for fan in [&fan_x, &fan_y, &fan_w] {
            let report = verify_vanishing(fan, &QDivisor::zero(), &int(6), 1);
            prop_assert!(report.verified());
        }
    }

    /// Quotient-singularity resolutions are smooth chains: consecutive rays
    /// span the quotient lattice with index one, and every exceptional curve
    /// has self-intersection at most -2.
    #[test]
    fn quotient_resolutions_are_smooth_chains(n in 2i64..=12, q in 1i64..=11) {
        prop_assume!(q < n);
        prop_assume!(num_integer::gcd(n, q) == 1);
        let ledger = hj_resolution(&int(n), &int(q)).unwrap();
        let lat = QLattice::from_rational_columns(
            2,
            &[
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1)],
                vec![rat(1, n), rat(q, n)],
            ],
        ).unwrap();
        let mut chain = vec![vec![rat(0, 1), rat(1, 1)]];
        chain.extend(ledger.entries.iter().map(|e| e.ray.clone()));
        chain.push(vec![rat(1, 1), rat(0, 1)]);
        for pair in chain.windows(2) {
            let u = lat.coords_of(&pair[0]).unwrap();
            let v = lat.coords_of(&pair[1]).unwrap();
            let det = &u[0] * &v[1] - &u[1] * &v[0];
            prop_assert_eq!(det.abs(), int(1));
        }
        for e in &ledger.entries {
            prop_assert!(e.self_intersection <= int(-2));
        }
    }
}
