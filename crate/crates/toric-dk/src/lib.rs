//! Exact-arithmetic workbench for toric birational correspondences.
//!
//! The crate verifies, at desk scale and entirely over the rationals, the
//! combinatorial data attached to four families of toroidal birational maps
//! between stacky toric pairs:
//!
//! * [`ratlat`]: integer/rational lattice algebra (Hermite normal forms,
//!   sublattice sum/intersection/dual/index, cones, and brute-force
//!   lattice-point oracles),
//! * [`stacky`]: stacky fans, Q-divisors, birational configurations,
//!   pullbacks, discrepancies, Hirzebruch-Jung resolutions, and isomorphism
//!   classification of monomial line bundles,
//! * [`fm`]: the monomial transform on line bundles for all four
//!   configuration cases, range windows, and graded Hom comparison,
//! * [`cohom`]: Cech cohomology of torus-invariant divisors on the coarse
//!   spaces, used to certify vanishing by direct scan,
//! * [`tilting`]: enumeration of in-range bundle classes and the generator
//!   quiver of their endomorphism algebra,
//! * [`cli`]: scenario ingestion and deterministic report emission for the
//!   `toric-dk` binary.
//!
//! No floating point exists anywhere in the crate; every quantity is an
//! arbitrary-precision integer or reduced rational.

pub mod cli;
pub mod cohom;
pub mod fm;
pub mod ratlat;
pub mod stacky;
pub mod tilting;
