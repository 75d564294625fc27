//! Exact sublattice algebra: Hermite bases, sum, intersection, dual, and
//! index, followed by a Hilbert basis of a singular affine cone.
//!
//! Run with `cargo run --example lattice_basics`.

use toric_dk::ratlat::vecs::{ivec, rat, rvec_str};
use toric_dk::ratlat::{hilbert_ring_generators, Cone, Int, QLattice, Sublattice};

fn main() {
    // Two index-two sublattices of Z^2: the even-sum lattice and 2Z x Z.
    let even_sum =
        Sublattice::from_generators(2, &[ivec(&[2, 0]), ivec(&[1, 1])]).unwrap();
    let stretched = Sublattice::from_generators(2, &[ivec(&[2, 0]), ivec(&[0, 1])]).unwrap();

    println!("even-sum lattice determinant: {}", even_sum.det());
    println!("stretched lattice determinant: {}", stretched.det());

    let sum = even_sum.sum(&stretched).unwrap();
    let meet = even_sum.intersection(&stretched).unwrap();
    println!("sum determinant (expect 1, the full lattice): {}", sum.det());
    println!("intersection determinant (expect 4): {}", meet.det());

    // Index is multiplicative along the chain meet <= even_sum <= sum.
    let lower = meet.index_in(&even_sum).unwrap();
    let upper = even_sum.index_in(&sum).unwrap();
    let total = meet.index_in(&sum).unwrap();
    println!("chain indices: {} * {} = {}", lower, upper, total);
    assert_eq!(&lower * &upper, total);

    // The dual of the even-sum lattice is generated over Z^2 by (1/2, 1/2).
    let dual = even_sum.dual();
    println!("dual denominator: {}", dual.denom());
    assert!(dual.contains(&[rat(1, 2), rat(1, 2)]));

    // Hilbert basis of the quarter-plane monoid in the half-integer lattice
    // refined along the diagonal: the quadratic cone singularity.
    let cone = Cone::orthant(2);
    let lat = QLattice::from_rational_columns(
        2,
        &[vec![rat(1, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 2)]],
    )
    .unwrap();
    let basis = hilbert_ring_generators(&cone, &lat, &Int::from(4)).unwrap();
    println!("Hilbert basis of the A_1 monoid:");
    for g in &basis {
        println!("  {}", rvec_str(g));
    }
    assert_eq!(basis.len(), 3);
}
