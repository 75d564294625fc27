//! Finite-index sublattices of Z^n and their rational rescalings.
//!
//! Both types are kept in canonical form at all times, so equal lattices
//! compare bit-equal: `Sublattice` stores the column Hermite normal form of
//! its basis, `QLattice` additionally keeps its denominator minimal.

use super::mat::{hnf_with_transform, IntMat, RatMat};
use super::vecs::{to_int, IntVec, RatVec};
use super::{Int, LatticeError, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Full-rank sublattice of Z^n, identified by its canonical HNF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMat,
}

impl Sublattice {
    /// The standard lattice Z^n.
    pub fn standard(ambient: usize) -> Self {
        Sublattice { ambient, basis: IntMat::identity(ambient) }
    }

    /// Canonical lattice spanned by the generators (any number >= rank).
    pub fn from_generators(ambient: usize, gens: &[IntVec]) -> Result<Self, LatticeError> {
        for g in gens {
            if g.len() != ambient {
                return Err(LatticeError::LengthMismatch(g.len(), ambient));
            }
        }
        let a = IntMat::from_columns(ambient, gens);
        let (h, rank) = super::mat::hnf(&a);
        if rank != ambient {
            return Err(LatticeError::NotFullRank);
        }
        let cols: Vec<IntVec> = (0..ambient).map(|j| h.column(j)).collect();
        Ok(Sublattice { ambient, basis: IntMat::from_columns(ambient, &cols) })
    }

    /// Diagonal lattice d_1 Z x ... x d_n Z (each d_i nonzero).
    pub fn diagonal(diag: &[Int]) -> Result<Self, LatticeError> {
        let n = diag.len();
        if diag.iter().any(|d| d.is_zero()) {
            return Err(LatticeError::NotFullRank);
        }
        let mut m = IntMat::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.abs());
        }
        Ok(Sublattice { ambient: n, basis: m })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Canonical basis columns.
    pub fn basis_columns(&self) -> Vec<IntVec> {
        self.basis.columns()
    }

    /// Positive determinant of the basis, equal to the index in Z^n.
    pub fn det(&self) -> Int {
        let mut d = Int::one();
        for i in 0..self.ambient {
            d *= self.basis.get(i, i);
        }
        d
    }

    /// Exact membership of an integer vector.
    pub fn contains(&self, v: &[Int]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        self.coords_of(v).is_some()
    }

    /// Integer coordinates of `v` in the canonical basis, when contained.
    pub fn coords_of(&self, v: &[Int]) -> Option<IntVec> {
        // Forward substitution on the lower-triangular basis.
        let mut rem: Vec<Int> = v.to_vec();
        let mut z = vec![Int::zero(); self.ambient];
        for i in 0..self.ambient {
            let d = self.basis.get(i, i);
            let (q, r) = rem[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
            for row in i..self.ambient {
                let delta = self.basis.get(row, i) * &z[i];
                rem[row] -= delta;
            }
        }
        Some(z)
    }

    /// Smallest lattice containing both inputs.
    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice, LatticeError> {
        if self.ambient != other.ambient {
            return Err(LatticeError::RankMismatch(self.ambient, other.ambient));
        }
        let mut gens = self.basis_columns();
        gens.extend(other.basis_columns());
        Sublattice::from_generators(self.ambient, &gens)
    }

    /// Largest common sublattice, computed from the integer kernel of the
    /// stacked basis matrix (independent of the dual/De Morgan route, which
    /// is kept as a cross-check property in the tests).
    pub fn intersection(&self, other: &Sublattice) -> Result<Sublattice, LatticeError> {
        if self.ambient != other.ambient {
            return Err(LatticeError::RankMismatch(self.ambient, other.ambient));
        }
        let n = self.ambient;
        let mut cols = self.basis_columns();
        for c in other.basis_columns() {
            cols.push(c.iter().map(|x| -x.clone()).collect());
        }
        let stacked = IntMat::from_columns(n, &cols);
        let (_h, u, rank) = hnf_with_transform(&stacked);
        debug_assert_eq!(rank, n);
        let mut gens: Vec<IntVec> = Vec::new();
        for j in rank..2 * n {
            let z = u.column(j);
            let x: IntVec = z[..n].to_vec();
            gens.push(self.basis.mul_vec(&x));
        }
        Sublattice::from_generators(n, &gens)
    }

    /// Group index [other : self]; requires self to be contained in other.
    pub fn index_in(&self, other: &Sublattice) -> Result<Int, LatticeError> {
        if self.ambient != other.ambient {
            return Err(LatticeError::RankMismatch(self.ambient, other.ambient));
        }
        for c in self.basis_columns() {
            if !other.contains(&c) {
                return Err(LatticeError::NotContained);
            }
        }
        let (num, den) = (self.det(), other.det());
        debug_assert!((&num % &den).is_zero());
        Ok(num / den)
    }

    /// Dual lattice {m : <m, v> integral for all v in self}, a QLattice.
    pub fn dual(&self) -> QLattice {
        let inv = RatMat::from_int(&self.basis)
            .inverse()
            .expect("full-rank basis is invertible");
        // Dual basis columns are the rows of the inverse.
        let cols: Vec<RatVec> = (0..self.ambient)
            .map(|i| (0..self.ambient).map(|j| inv.get(i, j).clone()).collect())
            .collect();
        QLattice::from_rational_columns(self.ambient, &cols)
            .expect("dual basis is full rank")
    }
}

/// Rational rescaling (1/d) L of a sublattice L of Z^n, with d minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLattice {
    denom: Int,
    lat: Sublattice,
}

impl QLattice {
    pub fn standard(ambient: usize) -> Self {
        QLattice { denom: Int::one(), lat: Sublattice::standard(ambient) }
    }

    pub fn from_sublattice(lat: Sublattice) -> Self {
        QLattice { denom: Int::one(), lat }.normalized()
    }

    /// Lattice generated by the given rational columns.
    pub fn from_rational_columns(ambient: usize, cols: &[RatVec]) -> Result<Self, LatticeError> {
        let mut denom = Int::one();
        for c in cols {
            if c.len() != ambient {
                return Err(LatticeError::LengthMismatch(c.len(), ambient));
            }
            for x in c {
                denom = denom.lcm(x.denom());
            }
        }
        let scaled: Vec<IntVec> = cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| {
                        let s = Rat::from_integer(denom.clone()) * x;
                        debug_assert!(s.is_integer());
                        s.to_integer()
                    })
                    .collect()
            })
            .collect();
        let lat = Sublattice::from_generators(ambient, &scaled)?;
        Ok(QLattice { denom, lat }.normalized())
    }

    /// Diagonal rational lattice q_1 Z x ... x q_n Z.
    pub fn diagonal(diag: &[Rat]) -> Result<Self, LatticeError> {
        let cols: Vec<RatVec> = (0..diag.len())
            .map(|i| {
                (0..diag.len())
                    .map(|j| if i == j { diag[i].clone() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        QLattice::from_rational_columns(diag.len(), &cols)
    }

    fn normalized(mut self) -> Self {
        debug_assert!(self.denom.is_positive());
        let mut g = self.denom.clone();
        for c in self.lat.basis_columns() {
            for x in c {
                g = g.gcd(&x);
            }
        }
        if !g.is_one() {
            let cols: Vec<IntVec> = self
                .lat
                .basis_columns()
                .iter()
                .map(|c| c.iter().map(|x| x / &g).collect())
                .collect();
            self.lat = Sublattice::from_generators(self.lat.ambient_rank(), &cols)
                .expect("rescaled basis keeps full rank");
            self.denom /= &g;
        }
        self
    }

    pub fn ambient_rank(&self) -> usize {
        self.lat.ambient_rank()
    }

    pub fn denom(&self) -> &Int {
        &self.denom
    }

    pub fn integer_part(&self) -> &Sublattice {
        &self.lat
    }

    /// Canonical rational basis columns.
    pub fn basis_columns(&self) -> Vec<RatVec> {
        let d = Rat::from_integer(self.denom.clone());
        self.lat
            .basis_columns()
            .iter()
            .map(|c| c.iter().map(|x| Rat::from_integer(x.clone()) / &d).collect())
            .collect()
    }

    /// Covolume (absolute determinant of the rational basis).
    pub fn covolume(&self) -> Rat {
        let mut dn = Rat::from_integer(self.lat.det());
        let d = Rat::from_integer(self.denom.clone());
        for _ in 0..self.ambient_rank() {
            dn /= &d;
        }
        dn
    }

    /// Exact membership of a rational vector.
    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient_rank() {
            return false;
        }
        let d = Rat::from_integer(self.denom.clone());
        let scaled: Vec<Rat> = v.iter().map(|x| x * &d).collect();
        match to_int(&scaled) {
            Some(w) => self.lat.contains(&w),
            None => false,
        }
    }

    /// Integer coordinates of `v` in the rational canonical basis.
    pub fn coords_of(&self, v: &[Rat]) -> Option<IntVec> {
        let d = Rat::from_integer(self.denom.clone());
        let scaled: Vec<Rat> = v.iter().map(|x| x * &d).collect();
        self.lat.coords_of(&to_int(&scaled)?)
    }

    pub fn sum(&self, other: &QLattice) -> Result<QLattice, LatticeError> {
        let mut cols = self.basis_columns();
        cols.extend(other.basis_columns());
        if self.ambient_rank() != other.ambient_rank() {
            return Err(LatticeError::RankMismatch(self.ambient_rank(), other.ambient_rank()));
        }
        QLattice::from_rational_columns(self.ambient_rank(), &cols)
    }

    pub fn intersection(&self, other: &QLattice) -> Result<QLattice, LatticeError> {
        if self.ambient_rank() != other.ambient_rank() {
            return Err(LatticeError::RankMismatch(self.ambient_rank(), other.ambient_rank()));
        }
        // Scale both to a common denominator and intersect the integer parts.
        let common = self.denom.lcm(&other.denom);
        let scale_self = &common / &self.denom;
        let scale_other = &common / &other.denom;
        let scale_cols = |lat: &Sublattice, s: &Int| -> Vec<IntVec> {
            lat.basis_columns()
                .iter()
                .map(|c| c.iter().map(|x| x * s).collect())
                .collect()
        };
        let a = Sublattice::from_generators(
            self.ambient_rank(),
            &scale_cols(&self.lat, &scale_self),
        )?;
        let b = Sublattice::from_generators(
            other.ambient_rank(),
            &scale_cols(&other.lat, &scale_other),
        )?;
        let inter = a.intersection(&b)?;
        Ok(QLattice { denom: common, lat: inter }.normalized())
    }

    /// Dual lattice; an involution on full-rank rational lattices.
    pub fn dual(&self) -> QLattice {
        let dual_int = self.lat.dual();
        // dual((1/d) L) = d * dual(L).
        let d = Rat::from_integer(self.denom.clone());
        let cols: Vec<RatVec> = dual_int
            .basis_columns()
            .iter()
            .map(|c| c.iter().map(|x| x * &d).collect())
            .collect();
        QLattice::from_rational_columns(self.ambient_rank(), &cols)
            .expect("dual basis is full rank")
    }

    /// Group index [other : self] as an exact rational; errors when self is
    /// not contained in other.
    pub fn index_in(&self, other: &QLattice) -> Result<Rat, LatticeError> {
        if self.ambient_rank() != other.ambient_rank() {
            return Err(LatticeError::RankMismatch(self.ambient_rank(), other.ambient_rank()));
        }
        for c in self.basis_columns() {
            if !other.contains(&c) {
                return Err(LatticeError::NotContained);
            }
        }
        Ok(self.covolume() / other.covolume())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{int, ivec, rat, rvec, rvec_frac};

    #[test]
    fn from_generators_matches_hand_hnf() {
        let l = Sublattice::from_generators(2, &[ivec(&[2, 0]), ivec(&[1, 1])]).unwrap();
        assert_eq!(l.basis_columns(), vec![ivec(&[1, 1]), ivec(&[0, 2])]);
        assert_eq!(l.det(), int(2));
        // The lattice is {(x,y): x+y even}.
        assert!(l.contains(&ivec(&[3, 1])));
        assert!(!l.contains(&ivec(&[1, 0])));
    }

    #[test]
    fn determinant_matches_generator_matrix() {
        let l = Sublattice::from_generators(2, &[ivec(&[8, 0]), ivec(&[1, 3])]).unwrap();
        assert_eq!(l.det(), int(24));
    }

    #[test]
    fn index_in_even_sum_lattice_is_two() {
        let l = Sublattice::from_generators(2, &[ivec(&[2, 0]), ivec(&[1, 1])]).unwrap();
        let z2 = Sublattice::standard(2);
        assert_eq!(l.index_in(&z2).unwrap(), int(2));
        assert_eq!(l.index_in(&l).unwrap(), int(1));
        assert_eq!(z2.index_in(&l), Err(LatticeError::NotContained));
    }

    #[test]
    fn diagonal_product_index() {
        let l = Sublattice::diagonal(&[int(2), int(3)]).unwrap();
        assert_eq!(l.index_in(&Sublattice::standard(2)).unwrap(), int(6));
    }

    #[test]
    fn sum_and_intersection_in_rank_one() {
        let two = Sublattice::diagonal(&[int(2)]).unwrap();
        let three = Sublattice::diagonal(&[int(3)]).unwrap();
        assert_eq!(two.sum(&three).unwrap(), Sublattice::standard(1));
        assert_eq!(
            two.intersection(&three).unwrap(),
            Sublattice::diagonal(&[int(6)]).unwrap()
        );
        assert_eq!(two.sum(&two).unwrap(), two);
        assert_eq!(two.intersection(&two).unwrap(), two);
    }

    #[test]
    fn qlattice_sum_takes_lcm_denominators() {
        let x = QLattice::diagonal(&[rat(1, 4)]).unwrap();
        let y = QLattice::diagonal(&[rat(1, 6)]).unwrap();
        let w = x.sum(&y).unwrap();
        assert_eq!(w, QLattice::diagonal(&[rat(1, 12)]).unwrap());
    }

    #[test]
    fn qlattice_intersection_via_denominators() {
        // (1/4)Z and (1/6)Z meet in (1/2)Z = dual route of the sum of duals.
        let x = QLattice::diagonal(&[rat(1, 4)]).unwrap();
        let y = QLattice::diagonal(&[rat(1, 6)]).unwrap();
        assert_eq!(x.intersection(&y).unwrap(), QLattice::diagonal(&[rat(1, 2)]).unwrap());
        // N_X cap N_Y for multiplicities 4 and 6 is the diagonal 12 lattice.
        let nx = QLattice::diagonal(&[rat(4, 1)]).unwrap();
        let ny = QLattice::diagonal(&[rat(6, 1)]).unwrap();
        assert_eq!(nx.intersection(&ny).unwrap(), QLattice::diagonal(&[rat(12, 1)]).unwrap());
    }

    #[test]
    fn dual_of_diagonal_multiplicities() {
        let l = Sublattice::diagonal(&[int(2), int(3), int(5)]).unwrap();
        let expect =
            QLattice::diagonal(&[rat(1, 2), rat(1, 3), rat(1, 5)]).unwrap();
        assert_eq!(l.dual(), expect);
        assert_eq!(Sublattice::standard(3).dual(), QLattice::standard(3));
    }

    #[test]
    fn dual_is_involutive_on_a_nondiagonal_lattice() {
        let q = QLattice::from_rational_columns(
            2,
            &[rvec_frac(&[(1, 2), (0, 1)]), rvec_frac(&[(1, 3), (1, 6)])],
        )
        .unwrap();
        assert_eq!(q.dual().dual(), q);
    }

    #[test]
    fn qlattice_membership() {
        let l = QLattice::diagonal(&[rat(1, 2), rat(1, 2)]).unwrap();
        assert!(l.contains(&rvec_frac(&[(1, 2), (1, 2)])));
        assert!(!l.contains(&rvec_frac(&[(1, 3), (0, 1)])));
        assert!(l.contains(&rvec(&[3, -1])));
    }

    #[test]
    fn denominator_is_minimal() {
        let q = QLattice::from_rational_columns(1, &[rvec_frac(&[(2, 4)])]).unwrap();
        assert_eq!(q.denom(), &int(2));
        assert_eq!(q, QLattice::diagonal(&[rat(1, 2)]).unwrap());
        let w = QLattice::from_rational_columns(1, &[rvec_frac(&[(4, 2)])]).unwrap();
        assert_eq!(w.denom(), &int(1));
    }

    #[test]
    fn index_in_rational_lattices() {
        let fine = QLattice::diagonal(&[rat(1, 4), rat(1, 4)]).unwrap();
        let coarse = QLattice::diagonal(&[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(coarse.index_in(&fine).unwrap(), rat(4, 1));
        assert!(fine.index_in(&coarse).is_err());
    }
}
