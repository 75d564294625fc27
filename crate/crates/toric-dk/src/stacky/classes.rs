//! Isomorphism classification of monomial line bundles.
//!
//! Two bundles on the same fan are isomorphic exactly when their numerator
//! lists differ by an element of the relation lattice
//! `{ (r_i <m, v_i>)_i : m integral }`, the lattice of principal divisors in
//! stacky numerators. Both operations here are integer-exact reductions by
//! that lattice.

use num_traits::Zero;

use super::fan::{MonomialLineBundle, StackyFan};
use crate::ratlat::mat::{hnf, hnf_with_transform, IntMat};
use crate::ratlat::vecs::floor_div;
use crate::ratlat::{Int, IntVec};

/// Rows `r_i v_i` of the fan: the matrix whose integer column span is the
/// relation lattice of principal numerator lists.
fn relation_matrix(fan: &StackyFan) -> IntMat {
    let rows: Vec<IntVec> = (0..fan.ray_count())
        .map(|i| fan.ray(i).iter().map(|x| x * fan.mult(i)).collect())
        .collect();
    IntMat::from_rows(&rows)
}

/// Decides monomial isomorphism: returns `m` with
/// `k_i - k'_i = r_i <m, v_i>` for every ray, or `None` when the bundles
/// are not isomorphic.
pub fn iso_equivalent(
    fan: &StackyFan,
    l: &MonomialLineBundle,
    l2: &MonomialLineBundle,
) -> Option<IntVec> {
    fan.check_bundle(l).expect("bundle lives on the fan");
    fan.check_bundle(l2).expect("bundle lives on the fan");
    let n = fan.ambient_rank();
    let mut delta: IntVec = l
        .k()
        .iter()
        .zip(l2.k())
        .map(|(x, y)| x - y)
        .collect();
    if fan.ray_count() == 0 {
        return Some(vec![Int::zero(); n]);
    }
    let a = relation_matrix(fan);
    let (h, u, rank) = hnf_with_transform(&a);
    let mut y = vec![Int::zero(); n];
    for j in 0..rank {
        let p = (0..h.rows).find(|&i| !h.get(i, j).is_zero())?;
        let (q, rem) = num_integer::Integer::div_rem(&delta[p], h.get(p, j));
        if !rem.is_zero() {
            return None;
        }
        for i in p..h.rows {
            delta[i] -= &q * h.get(i, j);
        }
        y[j] = q;
    }
    if delta.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(u.mul_vec(&y))
}

/// The canonical representative of a bundle's isomorphism class.
///
/// The relation lattice is put in Hermite form with pivots chosen from the
/// bottom row upward, and the numerator list is reduced to the unique
/// representative whose entry at each pivot row lies in `[0, pivot)`. Low
/// ray indices therefore keep the class information, which makes class
/// enumeration by leading entries deterministic.
pub fn normal_form(fan: &StackyFan, l: &MonomialLineBundle) -> MonomialLineBundle {
    fan.check_bundle(l).expect("bundle lives on the fan");
    let rays = fan.ray_count();
    if rays == 0 {
        return l.clone();
    }
    let a = relation_matrix(fan);
    let mut flipped = IntMat::zeros(a.rows, a.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            flipped.set(i, j, a.get(a.rows - 1 - i, j).clone());
        }
    }
    let (h, rank) = hnf(&flipped);
    let mut k: IntVec = l.k().to_vec();
    for j in 0..rank {
        let p_flipped = (0..h.rows)
            .find(|&i| !h.get(i, j).is_zero())
            .expect("pivot exists within rank");
        let p = rays - 1 - p_flipped;
        let pivot = h.get(p_flipped, j);
        let q = floor_div(&k[p], pivot);
        if q.is_zero() {
            continue;
        }
        for i in 0..rays {
            let g = h.get(rays - 1 - i, j);
            if !g.is_zero() {
                k[i] -= &q * g;
            }
        }
    }
    MonomialLineBundle::new(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{int, ivec};

    /// Source-side fan of the standard threefold flop: rays
    /// `e_1, e_2, e_3, (1,1,-1)`, all multiplicities one.
    fn flop_fan() -> StackyFan {
        StackyFan::new(
            3,
            vec![
                ivec(&[1, 0, 0]),
                ivec(&[0, 1, 0]),
                ivec(&[0, 0, 1]),
                ivec(&[1, 1, -1]),
            ],
            vec![int(1); 4],
            vec![vec![1, 2, 3], vec![0, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn principal_shift_is_detected() {
        let fan = flop_fan();
        let l = MonomialLineBundle::new(ivec(&[1, 1, 1, 1]));
        let triv = MonomialLineBundle::trivial(4);
        assert_eq!(iso_equivalent(&fan, &l, &triv), Some(ivec(&[1, 1, 1])));
        assert_eq!(
            iso_equivalent(&fan, &triv, &triv),
            Some(ivec(&[0, 0, 0]))
        );
    }

    #[test]
    fn degree_obstruction_is_detected() {
        let fan = flop_fan();
        let l = MonomialLineBundle::new(ivec(&[1, 0, 0, 0]));
        let triv = MonomialLineBundle::trivial(4);
        assert_eq!(iso_equivalent(&fan, &l, &triv), None);
    }

    #[test]
    fn normal_forms_on_the_flop() {
        let fan = flop_fan();
        let principal = MonomialLineBundle::new(ivec(&[1, 1, 1, 1]));
        assert_eq!(
            normal_form(&fan, &principal),
            MonomialLineBundle::trivial(4)
        );
        let degree_one = MonomialLineBundle::new(ivec(&[1, 0, 0, 0]));
        assert_eq!(normal_form(&fan, &degree_one), degree_one);
    }

    #[test]
    fn normal_form_is_idempotent_and_class_constant() {
        let fan = flop_fan();
        for k in [
            ivec(&[3, -2, 5, 7]),
            ivec(&[0, 0, 0, 9]),
            ivec(&[-4, 1, 1, -1]),
        ] {
            let l = MonomialLineBundle::new(k);
            let nf = normal_form(&fan, &l);
            assert_eq!(normal_form(&fan, &nf), nf);
            let m = iso_equivalent(&fan, &l, &nf).expect("reduction stays in the class");
            assert_eq!(m.len(), 3);
        }
    }

    #[test]
    fn weighted_line_reduces_modulo_mult() {
        let fan = StackyFan::orthant(1, vec![int(2)]).unwrap();
        let l = MonomialLineBundle::new(ivec(&[5]));
        assert_eq!(normal_form(&fan, &l), MonomialLineBundle::new(ivec(&[1])));
        assert_eq!(
            iso_equivalent(&fan, &l, &MonomialLineBundle::new(ivec(&[1]))),
            Some(ivec(&[2]))
        );
        assert_eq!(
            iso_equivalent(&fan, &l, &MonomialLineBundle::new(ivec(&[0]))),
            None
        );
    }

    #[test]
    fn empty_fan_keeps_bundles_unchanged() {
        let fan = StackyFan::new(0, vec![], vec![], vec![]).unwrap();
        let l = MonomialLineBundle::trivial(0);
        assert_eq!(normal_form(&fan, &l), l);
        assert_eq!(iso_equivalent(&fan, &l, &l), Some(vec![]));
    }
}
