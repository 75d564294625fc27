//! Exact rational linear feasibility via a phase-1 simplex with Bland's
//! rule. Systems in scope are tiny (at most ~10 variables and ~30 rows), so
//! a dense tableau over `Rat` is both simple and fast enough.

use super::{Int, Rat};
use num_traits::{Signed, Zero};

/// Decides whether `{ x in Q^dim : w_i . x >= c_i for all rows }` is
/// nonempty. Equalities are expressed as two opposite inequalities by the
/// caller.
pub fn feasible(dim: usize, rows: &[(Vec<Rat>, Rat)]) -> bool {
    let m = rows.len();
    if m == 0 {
        return true;
    }
    // Variables: x = p - q with p, q >= 0 (2*dim), one slack per row (m),
    // one artificial per row (m). Equations: w.x - s = c, scaled to rhs >= 0.
    let nv = 2 * dim + m;
    let total = nv + m;
    let mut t = vec![vec![Rat::zero(); total + 1]; m];
    for (i, (w, c)) in rows.iter().enumerate() {
        assert_eq!(w.len(), dim, "row arity mismatch");
        let flip = c.is_negative();
        let sign = if flip { -Rat::from_integer(Int::from(1)) } else { Rat::from_integer(Int::from(1)) };
        for j in 0..dim {
            t[i][j] = &sign * &w[j];
            t[i][dim + j] = -&sign * &w[j];
        }
        t[i][2 * dim + i] = -&sign * Rat::from_integer(Int::from(1));
        t[i][nv + i] = Rat::from_integer(Int::from(1));
        t[i][total] = if flip { -c.clone() } else { c.clone() };
    }
    // Reduced-cost row for phase 1 (minimize the sum of artificials): the
    // artificials are basic, so subtract every constraint row.
    let mut obj = vec![Rat::zero(); total + 1];
    for j in 0..=total {
        let mut acc = Rat::zero();
        for row in t.iter() {
            acc += &row[j];
        }
        obj[j] = -acc;
    }
    for o in obj[nv..total].iter_mut() {
        *o = Rat::zero();
    }
    let mut basis: Vec<usize> = (nv..total).collect();

    loop {
        // Bland: smallest-index column with negative reduced cost.
        let Some(enter) = (0..total).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // Ratio test with Bland tie-breaking on the basis label.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][total] / &t[i][enter];
            let better = match &best {
                None => true,
                Some(b) => {
                    ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                }
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        let Some(pivot_row) = leave else {
            // Phase-1 objective is bounded below by zero, so an unbounded
            // direction indicates a construction bug.
            unreachable!("phase-1 simplex reported an unbounded objective");
        };
        // Pivot.
        let pv = t[pivot_row][enter].clone();
        for j in 0..=total {
            t[pivot_row][j] = &t[pivot_row][j] / &pv;
        }
        for i in 0..m {
            if i == pivot_row || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            for j in 0..=total {
                t[i][j] = &t[i][j] - &f * &t[pivot_row][j];
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..=total {
                obj[j] = &obj[j] - &f * &t[pivot_row][j];
            }
        }
        basis[pivot_row] = enter;
    }
    // Feasible iff the optimal artificial sum is zero. obj[total] tracks the
    // negated objective value.
    obj[total].is_zero()
}

/// Convenience: strict positivity system `{ u : u . v >= 1 for all v }`,
/// deciding whether a linear functional strictly positive on all the given
/// vectors exists (by homogeneity, >= 1 is equivalent to > 0).
pub fn strictly_positive_functional_exists(dim: usize, vectors: &[Vec<Rat>]) -> bool {
    let rows: Vec<(Vec<Rat>, Rat)> = vectors
        .iter()
        .map(|v| (v.clone(), Rat::from_integer(Int::from(1))))
        .collect();
    feasible(dim, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{rat_int, rvec};

    #[test]
    fn interval_feasibility() {
        // x >= 1 and x <= 3.
        assert!(feasible(1, &[(rvec(&[1]), rat_int(1)), (rvec(&[-1]), rat_int(-3))]));
        // x >= 1 and x <= 0.
        assert!(!feasible(1, &[(rvec(&[1]), rat_int(1)), (rvec(&[-1]), rat_int(0))]));
    }

    #[test]
    fn equality_rows_work() {
        // x = 1/2 expressed as two inequalities, plus x >= 0.
        let half = Rat::new(Int::from(1), Int::from(2));
        assert!(feasible(
            1,
            &[
                (rvec(&[1]), half.clone()),
                (rvec(&[-1]), -half),
                (rvec(&[1]), rat_int(0)),
            ]
        ));
    }

    #[test]
    fn pointedness_detection() {
        // Opposite rays admit no strictly positive functional.
        assert!(!strictly_positive_functional_exists(
            2,
            &[rvec(&[1, 0]), rvec(&[-1, 0]), rvec(&[0, 1])]
        ));
        // The conifold cone does.
        assert!(strictly_positive_functional_exists(
            3,
            &[rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1]), rvec(&[1, 1, -1])]
        ));
    }

    #[test]
    fn degenerate_empty_system_is_feasible() {
        assert!(feasible(2, &[]));
    }
}
