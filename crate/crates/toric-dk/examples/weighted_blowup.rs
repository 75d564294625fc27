//! Discrepancy of a weighted blowup against a fractional boundary, and the
//! chart lattices of its coarse fan.
//!
//! The plane with boundary `(2/3)(D_1 + D_2)` is blown up at the origin
//! with weights `(1, 2)`. The exceptional ray has discrepancy zero against
//! that boundary (log crepant), and the coarse fan of the blowup has one
//! smooth chart and one chart of index two.
//!
//! Run with `cargo run --example weighted_blowup`.

use num_traits::Zero;
use toric_dk::ratlat::vecs::{ivec, rat, rat_str, rvec};
use toric_dk::ratlat::Sublattice;
use toric_dk::stacky::{discrepancy_of_ray, QDivisor, StackyFan};

fn main() {
    // The smooth plane as a stacky fan with trivial multiplicities.
    let plane = StackyFan::orthant(2, vec![1.into(), 1.into()]).unwrap();
    let mut boundary = QDivisor::zero();
    boundary.set(0, rat(2, 3));
    boundary.set(1, rat(2, 3));

    // The exceptional ray of the (1, 2)-weighted blowup sits inside the
    // positive quadrant cone spanned by rays 0 and 1.
    let w = rvec(&[1, 2]);
    let disc = discrepancy_of_ray(&plane, &boundary, &w, &[0, 1]).unwrap();
    println!("discrepancy of the (1,2) ray over the 2/3 boundary: {}", rat_str(&disc));
    assert!(disc.is_zero());

    // Without the boundary the same ray is discrepant.
    let bare = discrepancy_of_ray(&plane, &QDivisor::zero(), &w, &[0, 1]).unwrap();
    println!("discrepancy over the empty boundary: {}", rat_str(&bare));
    assert_eq!(bare, rat(2, 1));

    // Coarse fan of the blowup: the quadrant subdivided along (1, 2). The
    // chart spanned by (1,0),(1,2) has index two in the ambient lattice,
    // which is the quotient singularity the stacky structure resolves.
    let blowup = StackyFan::new(
        2,
        vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 2])],
        vec![1.into(), 1.into(), 1.into()],
        vec![vec![0, 2], vec![1, 2]],
    )
    .unwrap();
    let ambient = Sublattice::standard(2);
    for c in 0..blowup.max_cones().len() {
        let index = blowup.chart_lattice(c).index_in(&ambient).unwrap();
        println!("chart {} lattice index: {}", c, index);
    }
}
