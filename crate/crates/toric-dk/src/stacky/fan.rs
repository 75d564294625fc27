//! Stacky fans, rational divisors, and monomial line bundles.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::StackyError;
use crate::ratlat::mat::RatMat;
use crate::ratlat::vecs::{is_primitive, to_rat};
use crate::ratlat::{lp, Int, IntVec, QLattice, Rat, Sublattice};

/// A simplicial fan whose rays carry positive integer multiplicities.
///
/// The multiplicity `r_i` turns the toric chart around ray `i` into its
/// degree-`r_i` root cover; the pair structure it encodes is the boundary
/// `sum (1 - 1/r_i) D_i`. Every maximal cone is simplicial and
/// full-dimensional, and any two maximal cones intersect in a common face
/// (checked exhaustively on construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackyFan {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    mults: Vec<Int>,
    max_cones: Vec<Vec<usize>>,
}

impl StackyFan {
    /// Validates and builds a stacky fan. Cone entries are ray indices into
    /// `rays`; they are sorted and deduplicated.
    pub fn new(
        ambient_rank: usize,
        rays: Vec<IntVec>,
        mults: Vec<Int>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, StackyError> {
        if mults.len() != rays.len() {
            return Err(StackyError::LengthMismatch {
                expected: rays.len(),
                found: mults.len(),
            });
        }
        for (i, v) in rays.iter().enumerate() {
            if v.len() != ambient_rank {
                return Err(StackyError::LengthMismatch {
                    expected: ambient_rank,
                    found: v.len(),
                });
            }
            if !is_primitive(v) {
                return Err(StackyError::RayNotPrimitive { index: i });
            }
        }
        for (i, r) in mults.iter().enumerate() {
            if *r < Int::one() {
                return Err(StackyError::MultNotPositive { index: i });
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            let mut cone = cone;
            cone.sort_unstable();
            cone.dedup();
            for &i in &cone {
                if i >= rays.len() {
                    return Err(StackyError::RayIndexOutOfBounds {
                        index: i,
                        rays: rays.len(),
                    });
                }
            }
            let cols: Vec<Vec<Rat>> = cone.iter().map(|&i| to_rat(&rays[i])).collect();
            let rank = RatMat::from_columns(ambient_rank, &cols).rank();
            if rank < cone.len() {
                return Err(StackyError::ConeNotSimplicial { cone: c });
            }
            if cone.len() != ambient_rank {
                return Err(StackyError::ConeNotFullDimensional { cone: c });
            }
            cones.push(cone);
        }
        let fan = StackyFan {
            ambient_rank,
            rays,
            mults,
            max_cones: cones,
        };
        for a in 0..fan.max_cones.len() {
            for b in (a + 1)..fan.max_cones.len() {
                if !fan.pair_meets_in_face(a, b) {
                    return Err(StackyError::ConesNotMeetingInFace { first: a, second: b });
                }
            }
        }
        Ok(fan)
    }

    /// The orthant fan: rays `e_1..e_n`, one maximal cone, given mults.
    pub fn orthant(n: usize, mults: Vec<Int>) -> Result<Self, StackyError> {
        let rays = (0..n)
            .map(|i| {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::one();
                e
            })
            .collect();
        StackyFan::new(n, rays, mults, vec![(0..n).collect()])
    }

    /// Decides whether cones `a` and `b` intersect exactly in the cone on
    /// their common rays. One direction suffices: once no point of the
    /// intersection needs a private ray of `a`, the intersection equals the
    /// common-ray cone, which is a face of both simplicial cones.
    fn pair_meets_in_face(&self, a: usize, b: usize) -> bool {
        self.no_private_ray_needed(a, b)
    }

    /// True when every point of `cone_a ∩ cone_b` has zero coefficient on
    /// all rays of `a` outside the common ray set. Each private ray is
    /// tested by one feasibility problem; scaling makes `coefficient >= 1`
    /// equivalent to `> 0`.
    fn no_private_ray_needed(&self, a: usize, b: usize) -> bool {
        let ca = &self.max_cones[a];
        let cb = &self.max_cones[b];
        let dim = ca.len() + cb.len();
        for (t, &ray) in ca.iter().enumerate() {
            if cb.contains(&ray) {
                continue;
            }
            let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
            for v in 0..dim {
                let mut w = vec![Rat::zero(); dim];
                w[v] = Rat::one();
                rows.push((w, Rat::zero()));
            }
            let mut w = vec![Rat::zero(); dim];
            w[t] = Rat::one();
            rows.push((w, Rat::one()));
            for d in 0..self.ambient_rank {
                let mut w = vec![Rat::zero(); dim];
                for (u, &i) in ca.iter().enumerate() {
                    w[u] = Rat::from_integer(self.rays[i][d].clone());
                }
                for (u, &j) in cb.iter().enumerate() {
                    w[ca.len() + u] = -Rat::from_integer(self.rays[j][d].clone());
                }
                let neg: Vec<Rat> = w.iter().map(|x| -x).collect();
                rows.push((w, Rat::zero()));
                rows.push((neg, Rat::zero()));
            }
            if lp::feasible(dim, &rows) {
                return false;
            }
        }
        true
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVec {
        &self.rays[i]
    }

    pub fn mults(&self) -> &[Int] {
        &self.mults
    }

    pub fn mult(&self, i: usize) -> &Int {
        &self.mults[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone(&self, c: usize) -> &[usize] {
        &self.max_cones[c]
    }

    pub fn cone_rays(&self, c: usize) -> Vec<IntVec> {
        self.max_cones[c].iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// The boundary divisor `sum (1 - 1/r_i) D_i` encoded by the mults.
    pub fn standard_boundary(&self) -> QDivisor {
        let mut d = QDivisor::zero();
        for (i, r) in self.mults.iter().enumerate() {
            let b = Rat::one() - Rat::new(Int::one(), r.clone());
            d.set(i, b);
        }
        d
    }

    /// The lattice of the smooth cover chart of cone `c`: the sublattice
    /// generated by `r_i v_i` over the cone's rays. Full rank because the
    /// cone is full-dimensional.
    pub fn chart_lattice(&self, c: usize) -> Sublattice {
        let gens: Vec<IntVec> = self.max_cones[c]
            .iter()
            .map(|&i| {
                self.rays[i]
                    .iter()
                    .map(|x| x * &self.mults[i])
                    .collect::<IntVec>()
            })
            .collect();
        Sublattice::from_generators(self.ambient_rank, &gens)
            .expect("cone rays scaled by positive mults stay full rank")
    }

    /// The monomial lattice of the chart of cone `c`: the dual of
    /// [`StackyFan::chart_lattice`].
    pub fn chart_dual(&self, c: usize) -> QLattice {
        self.chart_lattice(c).dual()
    }

    /// Checks that a bundle's numerator list matches this fan's rays.
    pub fn check_bundle(&self, l: &MonomialLineBundle) -> Result<(), StackyError> {
        if l.len() != self.rays.len() {
            return Err(StackyError::LengthMismatch {
                expected: self.rays.len(),
                found: l.len(),
            });
        }
        Ok(())
    }
}

/// A rational divisor supported on the rays of a fan, stored sparsely.
/// Zero coefficients are pruned, so equal divisors compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor {
    coeffs: BTreeMap<usize, Rat>,
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor::default()
    }

    /// Builds from a dense coefficient list indexed by ray.
    pub fn from_dense(coeffs: &[Rat]) -> Self {
        let mut d = QDivisor::zero();
        for (i, c) in coeffs.iter().enumerate() {
            d.set(i, c.clone());
        }
        d
    }

    pub fn from_pairs(pairs: &[(usize, Rat)]) -> Self {
        let mut d = QDivisor::zero();
        for (i, c) in pairs {
            d.set(*i, c.clone());
        }
        d
    }

    /// The coefficient at ray `i` (zero when absent).
    pub fn coefficient(&self, i: usize) -> Rat {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, i: usize, c: Rat) {
        if c.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c);
        }
    }

    /// Ray indices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            let v = out.coefficient(*i) + c;
            out.set(*i, v);
        }
        out
    }

    pub fn sub(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            let v = out.coefficient(*i) - c;
            out.set(*i, v);
        }
        out
    }

    pub fn scale(&self, f: &Rat) -> QDivisor {
        let mut out = QDivisor::zero();
        for (i, c) in &self.coeffs {
            out.set(*i, c * f);
        }
        out
    }
}

/// A line bundle `O(sum (k_i / r_i) D_i)` recorded by its numerator list,
/// one entry per ray of the host fan.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialLineBundle {
    k: Vec<Int>,
}

impl MonomialLineBundle {
    pub fn new(k: Vec<Int>) -> Self {
        MonomialLineBundle { k }
    }

    pub fn k(&self) -> &[Int] {
        &self.k
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// The trivial bundle on a fan with `n` rays.
    pub fn trivial(n: usize) -> Self {
        MonomialLineBundle {
            k: vec![Int::zero(); n],
        }
    }
}

/// The log canonical divisor of the pair encoded by the fan:
/// `K + B = sum (-1/r_i) D_i`.
pub fn log_canonical(fan: &StackyFan) -> QDivisor {
    let mut d = QDivisor::zero();
    for (i, r) in fan.mults().iter().enumerate() {
        d.set(i, -Rat::new(Int::one(), r.clone()));
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{int, ivec, rat};

    fn mults(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn orthant_boundary_and_log_canonical() {
        let fan = StackyFan::orthant(2, mults(&[2, 3])).unwrap();
        assert_eq!(fan.standard_boundary().coefficient(0), rat(1, 2));
        assert_eq!(fan.standard_boundary().coefficient(1), rat(2, 3));
        let k = log_canonical(&fan);
        assert_eq!(k.coefficient(0), rat(-1, 2));
        assert_eq!(k.coefficient(1), rat(-1, 3));
    }

    #[test]
    fn blowup_fan_passes_face_check() {
        let fan = StackyFan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])],
            mults(&[1, 1, 1]),
            vec![vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert_eq!(fan.max_cones().len(), 2);
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        // The second cone sits inside the first, so they do not meet in a
        // face.
        let err = StackyFan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])],
            mults(&[1, 1, 1]),
            vec![vec![0, 1], vec![0, 2]],
        )
        .unwrap_err();
        assert_eq!(err, StackyError::ConesNotMeetingInFace { first: 0, second: 1 });
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let err = StackyFan::new(
            2,
            vec![ivec(&[2, 0]), ivec(&[0, 1])],
            mults(&[1, 1]),
            vec![vec![0, 1]],
        )
        .unwrap_err();
        assert_eq!(err, StackyError::RayNotPrimitive { index: 0 });

        let err = StackyFan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1])],
            mults(&[1, 0]),
            vec![vec![0, 1]],
        )
        .unwrap_err();
        assert_eq!(err, StackyError::MultNotPositive { index: 1 });

        let err = StackyFan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, 0])],
            mults(&[1, 1, 1]),
            vec![vec![0, 2]],
        )
        .unwrap_err();
        assert_eq!(err, StackyError::ConeNotSimplicial { cone: 0 });

        let err = StackyFan::new(
            3,
            vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0])],
            mults(&[1, 1]),
            vec![vec![0, 1]],
        )
        .unwrap_err();
        assert_eq!(err, StackyError::ConeNotFullDimensional { cone: 0 });
    }

    #[test]
    fn chart_dual_of_weighted_orthant_is_diagonal() {
        let fan = StackyFan::orthant(2, mults(&[2, 3])).unwrap();
        let dual = fan.chart_dual(0);
        let expect = QLattice::diagonal(&[rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(dual, expect);
    }

    #[test]
    fn divisor_arithmetic_prunes_zeros() {
        let a = QDivisor::from_pairs(&[(0, rat(1, 2)), (2, rat(1, 1))]);
        let b = QDivisor::from_pairs(&[(0, rat(-1, 2)), (1, rat(2, 1))]);
        let s = a.add(&b);
        assert_eq!(s.support(), vec![1, 2]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.scale(&rat(2, 1)).coefficient(0), rat(1, 1));
    }
}
