//! Small exact matrices: integer column Hermite normal form and rational
//! Gaussian elimination. Sizes in scope are tiny (rank at most 8), so the
//! classical cubic algorithms are used without fill-in control.

use super::vecs::{ceil_div, floor_div};
use super::{Int, Rat};
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = IntMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    pub fn from_rows(rows_in: &[Vec<Int>]) -> Self {
        let rows = rows_in.len();
        let cols = if rows == 0 { 0 } else { rows_in[0].len() };
        let mut m = IntMat::zeros(rows, cols);
        for (i, r) in rows_in.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for j in 0..cols {
                m.set(i, j, r[j].clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix-vector product over the integers.
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// col_dst += c * col_src
    fn addmul_col(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + c * self.get(i, src);
            self.set(i, dst, v);
        }
    }
}

/// Column-style Hermite normal form.
///
/// Returns `(h, u, rank)` with `a * u = h`, `u` unimodular. The first `rank`
/// columns of `h` are the canonical basis: pivots walk down successive rows,
/// pivot entries are positive, and entries of a pivot row left of the pivot
/// are reduced into `[0, pivot)`. Columns beyond `rank` are zero.
pub fn hnf_with_transform(a: &IntMat) -> (IntMat, IntMat, usize) {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.cols);
    let mut pivot = 0usize;
    for row in 0..h.rows {
        if pivot >= h.cols {
            break;
        }
        // Euclidean elimination across columns >= pivot in this row.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot..h.cols {
                if !h.get(row, j).is_zero() {
                    best = match best {
                        None => Some(j),
                        Some(b) => {
                            if h.get(row, j).abs() < h.get(row, b).abs() {
                                Some(j)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(jmin) = best else { break };
            h.swap_cols(pivot, jmin);
            u.swap_cols(pivot, jmin);
            let mut done = true;
            for j in (pivot + 1)..h.cols {
                if h.get(row, j).is_zero() {
                    continue;
                }
                let q = -(h.get(row, j) / h.get(row, pivot));
                h.addmul_col(j, pivot, &q);
                u.addmul_col(j, pivot, &q);
                if !h.get(row, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(row, pivot).is_zero() {
            continue;
        }
        if h.get(row, pivot).is_negative() {
            h.negate_col(pivot);
            u.negate_col(pivot);
        }
        let d = h.get(row, pivot).clone();
        for j in 0..pivot {
            let q = -floor_div(h.get(row, j), &d);
            h.addmul_col(j, pivot, &q);
            u.addmul_col(j, pivot, &q);
        }
        pivot += 1;
    }
    (h, u, pivot)
}

/// Hermite normal form without the transform.
pub fn hnf(a: &IntMat) -> (IntMat, usize) {
    let (h, _, rank) = hnf_with_transform(a);
    (h, rank)
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_int(a: &IntMat) -> Self {
        let mut m = RatMat::zeros(a.rows, a.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, Rat::from_integer(a.get(i, j).clone()));
            }
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = RatMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    /// Rank via Gaussian elimination (exact).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m.get(rank, col).clone();
            for i in (rank + 1)..m.rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col) / &inv;
                for j in col..m.cols {
                    let v = m.get(i, j) - &f * m.get(rank, j);
                    m.set(i, j, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let x = self.get(a, j).clone();
            let y = self.get(b, j).clone();
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&i| !m.get(i, col).is_zero())?;
            m.swap_rows(col, p);
            inv.swap_rows(col, p);
            let d = m.get(col, col).clone();
            for j in 0..n {
                let v = m.get(col, j) / &d;
                m.set(col, j, v);
                let w = inv.get(col, j) / &d;
                inv.set(col, j, w);
            }
            for i in 0..n {
                if i == col || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in 0..n {
                    let v = m.get(i, j) - &f * m.get(col, j);
                    m.set(i, j, v);
                    let w = inv.get(i, j) - &f * inv.get(col, j);
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        Some(self.inverse()?.mul_vec(b))
    }
}

/// Solves `sum_j x_j * cols[j] = b` exactly. Returns `None` when the columns
/// are dependent or `b` lies outside their span; otherwise the solution is
/// unique.
pub fn solve_columns(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = b.len();
    let k = cols.len();
    for c in cols {
        assert_eq!(c.len(), m);
    }
    let mut aug = RatMat::zeros(m, k + 1);
    for i in 0..m {
        for (j, c) in cols.iter().enumerate() {
            aug.set(i, j, c[i].clone());
        }
        aug.set(i, k, b[i].clone());
    }
    for col in 0..k {
        let p = (col..m).find(|&i| !aug.get(i, col).is_zero())?;
        aug.swap_rows(col, p);
        let d = aug.get(col, col).clone();
        for j in col..=k {
            let v = aug.get(col, j) / &d;
            aug.set(col, j, v);
        }
        for i in 0..m {
            if i == col || aug.get(i, col).is_zero() {
                continue;
            }
            let f = aug.get(i, col).clone();
            for j in col..=k {
                let v = aug.get(i, j) - &f * aug.get(col, j);
                aug.set(i, j, v);
            }
        }
    }
    if (k..m).any(|i| !aug.get(i, k).is_zero()) {
        return None;
    }
    Some((0..k).map(|j| aug.get(j, k).clone()).collect())
}

/// Integer division helpers used by scan bounds: exact rational bound to the
/// tightest integer on the feasible side.
pub fn int_ceil_of(x: &Rat) -> Int {
    ceil_div(x.numer(), x.denom())
}

pub fn int_floor_of(x: &Rat) -> Int {
    floor_div(x.numer(), x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{int, ivec};

    fn cols(v: &[&[i64]]) -> Vec<Vec<Int>> {
        v.iter().map(|c| ivec(c)).collect()
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        let a = IntMat::from_columns(2, &cols(&[&[1, 0], &[0, 1]]));
        let (h, rank) = hnf(&a);
        assert_eq!(rank, 2);
        assert_eq!(h, IntMat::identity(2));
    }

    #[test]
    fn hnf_canonical_form_of_even_sum_lattice() {
        // {(2,0),(1,1)} spans {(x,y): x+y even}; canonical columns (1,1),(0,2).
        let a = IntMat::from_columns(2, &cols(&[&[2, 0], &[1, 1]]));
        let (h, u, rank) = hnf_with_transform(&a);
        assert_eq!(rank, 2);
        assert_eq!(h.column(0), ivec(&[1, 1]));
        assert_eq!(h.column(1), ivec(&[0, 2]));
        // a * u = h
        for j in 0..2 {
            let uj = u.column(j);
            assert_eq!(a.mul_vec(&uj), h.column(j));
        }
    }

    #[test]
    fn hnf_is_invariant_under_generator_shuffles() {
        let gens: Vec<Vec<Int>> = cols(&[&[8, 0], &[1, 3], &[5, 3]]);
        let a = IntMat::from_columns(2, &gens);
        let (ha, ra) = hnf(&a);
        let shuffled: Vec<Vec<Int>> = vec![gens[2].clone(), gens[0].clone(), gens[1].clone()];
        let b = IntMat::from_columns(2, &shuffled);
        let (hb, rb) = hnf(&b);
        assert_eq!(ra, rb);
        for j in 0..ra {
            assert_eq!(ha.column(j), hb.column(j));
        }
    }

    #[test]
    fn hnf_detects_rank_deficiency() {
        let a = IntMat::from_columns(2, &cols(&[&[2, 4], &[1, 2]]));
        let (_, rank) = hnf(&a);
        assert_eq!(rank, 1);
    }

    #[test]
    fn kernel_columns_of_transform_annihilate() {
        let a = IntMat::from_columns(2, &cols(&[&[2, 0], &[0, 3], &[2, 3]]));
        let (h, u, rank) = hnf_with_transform(&a);
        assert_eq!(rank, 2);
        for j in rank..3 {
            assert!(h.column(j).iter().all(|x| x.is_zero()));
            let z = a.mul_vec(&u.column(j));
            assert!(z.iter().all(|x| x.is_zero()));
            assert!(!u.column(j).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let a = IntMat::from_columns(3, &cols(&[&[1, 0, 1], &[2, 1, 0], &[0, 0, 3]]));
        let q = RatMat::from_int(&a);
        let inv = q.inverse().unwrap();
        for j in 0..3 {
            let e = q.mul_vec(&inv.column(j));
            for i in 0..3 {
                let expect = if i == j { int(1) } else { int(0) };
                assert_eq!(e[i], Rat::from_integer(expect));
            }
        }
        assert_eq!(q.rank(), 3);
    }

    #[test]
    fn solve_columns_handles_tall_systems() {
        use crate::ratlat::vecs::{rat, rvec};
        // (1,0,1) and (0,1,1) with target (2,3,5) has the unique answer (2,3).
        let cols = vec![rvec(&[1, 0, 1]), rvec(&[0, 1, 1])];
        let x = solve_columns(&cols, &rvec(&[2, 3, 5])).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(3, 1)]);
        // (2,3,6) is outside the span.
        assert!(solve_columns(&cols, &rvec(&[2, 3, 6])).is_none());
        // Dependent columns are rejected.
        let dep = vec![rvec(&[1, 1, 0]), rvec(&[2, 2, 0])];
        assert!(solve_columns(&dep, &rvec(&[3, 3, 0])).is_none());
    }
}
