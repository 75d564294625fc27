//! Rational polyhedral cones given by primitive ray generators.

use super::lp;
use super::mat::RatMat;
use super::vecs::{is_primitive, to_rat, IntVec, RatVec};
use super::{LatticeError, Rat};
use num_traits::Signed;

/// Strongly convex rational cone spanned by primitive rays. Simplicial when
/// the rays are linearly independent; full-dimensional when they span the
/// ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    rays: Vec<IntVec>,
}

impl Cone {
    /// Validates rays: nonzero, primitive, and spanning a strongly convex
    /// (pointed) cone.
    pub fn new(ambient: usize, rays: Vec<IntVec>) -> Result<Self, LatticeError> {
        for r in &rays {
            if r.len() != ambient {
                return Err(LatticeError::LengthMismatch(r.len(), ambient));
            }
            if !is_primitive(r) {
                return Err(LatticeError::BadRay);
            }
        }
        let rat_rays: Vec<RatVec> = rays.iter().map(|r| to_rat(r)).collect();
        if !rays.is_empty() && !lp::strictly_positive_functional_exists(ambient, &rat_rays) {
            return Err(LatticeError::NotPointed);
        }
        Ok(Cone { ambient, rays })
    }

    /// The full positive orthant of rank n.
    pub fn orthant(n: usize) -> Self {
        let mut rays = Vec::with_capacity(n);
        for i in 0..n {
            let mut r = vec![super::Int::from(0); n];
            r[i] = super::Int::from(1);
            rays.push(r);
        }
        Cone { ambient: n, rays }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    fn ray_matrix(&self) -> RatMat {
        let cols: Vec<RatVec> = self.rays.iter().map(|r| to_rat(r)).collect();
        RatMat::from_columns(self.ambient, &cols)
    }

    /// Dimension of the linear span of the rays.
    pub fn span_rank(&self) -> usize {
        if self.rays.is_empty() {
            return 0;
        }
        self.ray_matrix().rank()
    }

    pub fn is_simplicial(&self) -> bool {
        self.span_rank() == self.rays.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.span_rank() == self.ambient
    }

    /// Exact membership of a rational point in the cone.
    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.ambient);
        if self.is_simplicial() && self.is_full_dimensional() {
            let coords = self
                .ray_matrix()
                .solve(x)
                .expect("simplicial full-dimensional ray matrix is invertible");
            return coords.iter().all(|c| !c.is_negative());
        }
        // General case: nonnegative combination exists, decided exactly.
        let k = self.rays.len();
        let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
        // lambda_i >= 0
        for i in 0..k {
            let mut w = vec![Rat::from_integer(super::Int::from(0)); k];
            w[i] = Rat::from_integer(super::Int::from(1));
            rows.push((w, Rat::from_integer(super::Int::from(0))));
        }
        // V lambda = x as two inequalities per coordinate.
        for c in 0..self.ambient {
            let w: Vec<Rat> = self
                .rays
                .iter()
                .map(|r| Rat::from_integer(r[c].clone()))
                .collect();
            rows.push((w.clone(), x[c].clone()));
            rows.push((w.iter().map(|v| -v.clone()).collect(), -x[c].clone()));
        }
        lp::feasible(k, &rows)
    }

    /// Barycentric coordinates in a simplicial full-dimensional cone.
    pub fn simplicial_coordinates(&self, x: &[Rat]) -> Result<RatVec, LatticeError> {
        if !self.is_simplicial() || !self.is_full_dimensional() {
            return Err(LatticeError::NotSimplicial);
        }
        Ok(self
            .ray_matrix()
            .solve(x)
            .expect("simplicial full-dimensional ray matrix is invertible"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{ivec, rvec, rvec_frac};

    #[test]
    fn rejects_bad_rays() {
        assert_eq!(
            Cone::new(2, vec![ivec(&[2, 4])]),
            Err(LatticeError::BadRay)
        );
        assert_eq!(
            Cone::new(2, vec![ivec(&[0, 0])]),
            Err(LatticeError::BadRay)
        );
        assert_eq!(
            Cone::new(2, vec![ivec(&[1, 0]), ivec(&[-1, 0])]),
            Err(LatticeError::NotPointed)
        );
    }

    #[test]
    fn orthant_membership() {
        let c = Cone::orthant(2);
        assert!(c.is_simplicial());
        assert!(c.is_full_dimensional());
        assert!(c.contains(&rvec(&[1, 0])));
        assert!(c.contains(&rvec_frac(&[(1, 2), (1, 3)])));
        assert!(!c.contains(&rvec(&[-1, 1])));
    }

    #[test]
    fn conifold_cone_is_pointed_not_simplicial() {
        let c = Cone::new(
            3,
            vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1]), ivec(&[1, 1, -1])],
        )
        .unwrap();
        assert!(!c.is_simplicial());
        assert!(c.is_full_dimensional());
        assert!(c.contains(&rvec(&[1, 1, -1])));
        assert!(c.contains(&rvec(&[2, 1, 0])));
        assert!(!c.contains(&rvec(&[0, 0, -1])));
    }

    #[test]
    fn simplicial_coordinates_solve_exactly() {
        let c = Cone::new(2, vec![ivec(&[1, 0]), ivec(&[1, 2])]).unwrap();
        let lam = c.simplicial_coordinates(&rvec(&[3, 2])).unwrap();
        assert_eq!(lam, rvec_frac(&[(2, 1), (1, 1)]));
    }
}
