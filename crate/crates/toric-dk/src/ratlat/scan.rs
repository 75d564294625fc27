//! Bounded lattice-point enumeration with exact interval pruning.
//!
//! A [`LinearRegion`] is a finite set of integer points cut out by two-sided
//! linear constraints `lo <= w . z <= hi`. Enumeration walks coordinates
//! depth-first, at each level intersecting the exact integer interval
//! implied by every constraint given the already-fixed prefix and the static
//! ranges of the remaining coordinates. Counting uses the same walk but
//! closes the final coordinate as an interval length, so thin or empty
//! regions cost close to nothing.

use super::mat::RatMat;
use super::sublattice::QLattice;
use super::vecs::{ceil, floor, to_rat, IntVec, RatVec};
use super::{Int, LatticeError, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
struct Row {
    w: Vec<Int>,
    lo: Int,
    hi: Int,
}

/// Integer points satisfying a conjunction of two-sided linear constraints.
#[derive(Debug, Clone)]
pub struct LinearRegion {
    dim: usize,
    rows: Vec<Row>,
    trivially_empty: bool,
}

impl LinearRegion {
    pub fn new(dim: usize) -> Self {
        LinearRegion { dim, rows: Vec::new(), trivially_empty: false }
    }

    /// Adds `lo <= w . z <= hi` with rational bounds; since `w . z` is an
    /// integer the bounds are tightened to integers immediately.
    pub fn add_two_sided(&mut self, w: IntVec, lo: &Rat, hi: &Rat) {
        assert_eq!(w.len(), self.dim);
        let lo_i = ceil(lo);
        let hi_i = floor(hi);
        self.add_int_row(w, lo_i, hi_i);
    }

    /// Adds `w . z >= lo`.
    pub fn add_lower(&mut self, w: IntVec, lo: &Rat) {
        assert_eq!(w.len(), self.dim);
        let lo_i = ceil(lo);
        self.add_int_row(w, lo_i, huge_bound());
    }

    /// Adds `w . z <= hi`.
    pub fn add_upper(&mut self, w: IntVec, hi: &Rat) {
        assert_eq!(w.len(), self.dim);
        let hi_i = floor(hi);
        self.add_int_row(w, -huge_bound(), hi_i);
    }

    /// Adds the strict complement of `w . z >= bound`, i.e. `w . z < bound`.
    pub fn add_strict_complement_of_lower(&mut self, w: IntVec, bound: &Rat) {
        assert_eq!(w.len(), self.dim);
        let hi_i = ceil(bound) - Int::one();
        self.add_int_row(w, -huge_bound(), hi_i);
    }

    fn add_int_row(&mut self, w: IntVec, lo: Int, hi: Int) {
        if w.iter().all(|x| x.is_zero()) {
            if lo > Int::zero() || hi < Int::zero() {
                self.trivially_empty = true;
            }
            return;
        }
        if lo > hi {
            self.trivially_empty = true;
            return;
        }
        self.rows.push(Row { w, lo, hi });
    }

    /// Adds per-coordinate box constraints `-radius <= z_i <= radius`.
    pub fn add_box(&mut self, radius: &Int) {
        for i in 0..self.dim {
            let mut w = vec![Int::zero(); self.dim];
            w[i] = Int::one();
            self.add_int_row(w, -radius.clone(), radius.clone());
        }
    }

    fn prepared(&self) -> Result<Option<Prepared>, LatticeError> {
        if self.trivially_empty {
            return Ok(None);
        }
        if self.dim == 0 {
            // The only candidate is the empty tuple; rows were checked at
            // insertion (all-zero w).
            return Ok(Some(Prepared {
                dim: 0,
                rows: Vec::new(),
                zmin: Vec::new(),
                zmax: Vec::new(),
                suf_min: Vec::new(),
                suf_max: Vec::new(),
            }));
        }
        // Select dim linearly independent rows for the bounding change of
        // coordinates; fewer means the region is unbounded.
        let mut chosen: Vec<usize> = Vec::new();
        {
            let mut elim: Vec<Vec<Rat>> = Vec::new();
            for (idx, row) in self.rows.iter().enumerate() {
                if chosen.len() == self.dim {
                    break;
                }
                // Skip pseudo-infinite rows for the bounding system: both
                // sides must be finite to bound anything.
                if row.lo <= -practical_bound() || row.hi >= practical_bound() {
                    continue;
                }
                let mut v: Vec<Rat> = row.w.iter().map(|x| Rat::from_integer(x.clone())).collect();
                for r in &elim {
                    let lead = r.iter().position(|x| !x.is_zero()).unwrap();
                    if !v[lead].is_zero() {
                        let f = &v[lead] / &r[lead];
                        for j in 0..self.dim {
                            let t = &v[j] - &f * &r[j];
                            v[j] = t;
                        }
                    }
                }
                if v.iter().any(|x| !x.is_zero()) {
                    elim.push(v);
                    chosen.push(idx);
                }
            }
            if chosen.len() < self.dim {
                return Err(LatticeError::Unbounded);
            }
        }
        let wmat = RatMat::from_columns(
            self.dim,
            &(0..self.dim)
                .map(|k| {
                    chosen
                        .iter()
                        .map(|&idx| Rat::from_integer(self.rows[idx].w[k].clone()))
                        .collect::<Vec<Rat>>()
                })
                .collect::<Vec<_>>(),
        );
        // wmat rows are the chosen constraint vectors; z = wmat^{-1} y.
        let inv = wmat.inverse().expect("chosen rows are independent");
        let mut zmin = Vec::with_capacity(self.dim);
        let mut zmax = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let mut lo_acc = Rat::zero();
            let mut hi_acc = Rat::zero();
            for (j, &idx) in chosen.iter().enumerate() {
                let c = inv.get(k, j);
                let (a, b) = (
                    Rat::from_integer(self.rows[idx].lo.clone()),
                    Rat::from_integer(self.rows[idx].hi.clone()),
                );
                let (p, q) = (c * &a, c * &b);
                if p <= q {
                    lo_acc += p;
                    hi_acc += q;
                } else {
                    lo_acc += q;
                    hi_acc += p;
                }
            }
            zmin.push(ceil(&lo_acc));
            zmax.push(floor(&hi_acc));
        }
        for k in 0..self.dim {
            if zmin[k] > zmax[k] {
                return Ok(None);
            }
        }
        // Tighten the static ranges by interval propagation: each row
        // confines one coordinate given the interval contributions of the
        // others. Ranges only shrink, so every integer point survives, and
        // many empty regions are detected before the walk starts.
        for _ in 0..2 * self.dim {
            let mut changed = false;
            for row in &self.rows {
                for t in 0..self.dim {
                    let c = &row.w[t];
                    if c.is_zero() {
                        continue;
                    }
                    let mut rest_lo = Int::zero();
                    let mut rest_hi = Int::zero();
                    for u in 0..self.dim {
                        if u == t {
                            continue;
                        }
                        let a = &row.w[u] * &zmin[u];
                        let b = &row.w[u] * &zmax[u];
                        if a <= b {
                            rest_lo += a;
                            rest_hi += b;
                        } else {
                            rest_lo += b;
                            rest_hi += a;
                        }
                    }
                    let num_lo = &row.lo - &rest_hi;
                    let num_hi = &row.hi - &rest_lo;
                    let (cand_lo, cand_hi) = if c.is_positive() {
                        (ceil_ratio(&num_lo, c), floor_ratio(&num_hi, c))
                    } else {
                        (ceil_ratio(&num_hi, c), floor_ratio(&num_lo, c))
                    };
                    if cand_lo > zmin[t] {
                        zmin[t] = cand_lo;
                        changed = true;
                    }
                    if cand_hi < zmax[t] {
                        zmax[t] = cand_hi;
                        changed = true;
                    }
                    if zmin[t] > zmax[t] {
                        return Ok(None);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // Suffix interval contributions per row: bounds of
        // sum_{u >= t} w_u z_u over the static ranges.
        let m = self.rows.len();
        let mut suf_min = vec![vec![Int::zero(); self.dim + 1]; m];
        let mut suf_max = vec![vec![Int::zero(); self.dim + 1]; m];
        for (j, row) in self.rows.iter().enumerate() {
            for t in (0..self.dim).rev() {
                let a = &row.w[t] * &zmin[t];
                let b = &row.w[t] * &zmax[t];
                let (lo_c, hi_c) = if a <= b { (a, b) } else { (b, a) };
                suf_min[j][t] = &suf_min[j][t + 1] + lo_c;
                suf_max[j][t] = &suf_max[j][t + 1] + hi_c;
            }
        }
        Ok(Some(Prepared {
            dim: self.dim,
            rows: self.rows.clone(),
            zmin,
            zmax,
            suf_min,
            suf_max,
        }))
    }

    /// All integer points, in lexicographic coordinate order.
    pub fn enumerate(&self) -> Result<Vec<IntVec>, LatticeError> {
        let Some(prep) = self.prepared()? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut partial = vec![Int::zero(); prep.rows.len()];
        let mut z = vec![Int::zero(); prep.dim];
        prep.walk(0, &mut partial, &mut z, &mut |zz| out.push(zz.to_vec()));
        Ok(out)
    }

    /// Exact number of integer points.
    pub fn count(&self) -> Result<Int, LatticeError> {
        let Some(prep) = self.prepared()? else {
            return Ok(Int::zero());
        };
        if prep.dim == 0 {
            return Ok(Int::one());
        }
        let mut partial = vec![Int::zero(); prep.rows.len()];
        Ok(prep.count_walk(0, &mut partial))
    }

    /// True when the region has no integer points.
    pub fn is_empty(&self) -> Result<bool, LatticeError> {
        Ok(self.count()?.is_zero())
    }
}

/// Sentinel bounds standing in for infinity; chosen far beyond any value the
/// bounded callers can reach, and excluded from the bounding-row selection.
fn huge_bound() -> Int {
    Int::from(i64::MAX / 4)
}

fn practical_bound() -> Int {
    Int::from(i64::MAX / 8)
}

struct Prepared {
    dim: usize,
    rows: Vec<Row>,
    zmin: Vec<Int>,
    zmax: Vec<Int>,
    suf_min: Vec<Vec<Int>>,
    suf_max: Vec<Vec<Int>>,
}

impl Prepared {
    /// Exact feasible interval for z_t given the fixed prefix partials.
    fn level_interval(&self, t: usize, partial: &[Int]) -> Option<(Int, Int)> {
        let mut a = self.zmin[t].clone();
        let mut b = self.zmax[t].clone();
        for (j, row) in self.rows.iter().enumerate() {
            let c = &row.w[t];
            let rest_min = &self.suf_min[j][t + 1];
            let rest_max = &self.suf_max[j][t + 1];
            if c.is_zero() {
                let low = &partial[j] + rest_min;
                let high = &partial[j] + rest_max;
                if &high < &row.lo || &low > &row.hi {
                    return None;
                }
                continue;
            }
            // lo_j - partial - rest_max <= c z_t <= hi_j - partial - rest_min
            let num_lo = &row.lo - &partial[j] - rest_max;
            let num_hi = &row.hi - &partial[j] - rest_min;
            let (cand_lo, cand_hi) = if c.is_positive() {
                (ceil_ratio(&num_lo, c), floor_ratio(&num_hi, c))
            } else {
                (ceil_ratio(&num_hi, c), floor_ratio(&num_lo, c))
            };
            if cand_lo > a {
                a = cand_lo;
            }
            if cand_hi < b {
                b = cand_hi;
            }
            if a > b {
                return None;
            }
        }
        Some((a, b))
    }

    fn walk(
        &self,
        t: usize,
        partial: &mut Vec<Int>,
        z: &mut Vec<Int>,
        emit: &mut impl FnMut(&[Int]),
    ) {
        if t == self.dim {
            emit(z);
            return;
        }
        let Some((a, b)) = self.level_interval(t, partial) else {
            return;
        };
        let mut v = a;
        while v <= b {
            z[t] = v.clone();
            for (j, row) in self.rows.iter().enumerate() {
                partial[j] += &row.w[t] * &v;
            }
            self.walk(t + 1, partial, z, emit);
            for (j, row) in self.rows.iter().enumerate() {
                partial[j] -= &row.w[t] * &v;
            }
            v += 1;
        }
    }

    fn count_walk(&self, t: usize, partial: &mut Vec<Int>) -> Int {
        let Some((a, b)) = self.level_interval(t, partial) else {
            return Int::zero();
        };
        if t + 1 == self.dim {
            return &b - &a + 1;
        }
        let mut acc = Int::zero();
        let mut v = a;
        while v <= b {
            for (j, row) in self.rows.iter().enumerate() {
                partial[j] += &row.w[t] * &v;
            }
            acc += self.count_walk(t + 1, partial);
            for (j, row) in self.rows.iter().enumerate() {
                partial[j] -= &row.w[t] * &v;
            }
            v += 1;
        }
        acc
    }
}

fn ceil_ratio(num: &Int, den: &Int) -> Int {
    ceil(&Rat::new(num.clone(), den.clone()))
}

fn floor_ratio(num: &Int, den: &Int) -> Int {
    floor(&Rat::new(num.clone(), den.clone()))
}

/// Constraint row of `<u, ray>` in the integer coordinates of the lattice:
/// with `u = (1/d) H z` the pairing is `(1/d) (ray^T H) . z`.
fn ray_pairing_row(basis: &[Vec<Int>], ray: &IntVec, n: usize) -> IntVec {
    (0..n)
        .map(|k| {
            let mut acc = Int::zero();
            for i in 0..n {
                acc += &ray[i] * &basis[k][i];
            }
            acc
        })
        .collect()
}

/// Rewrites the lattice basis by a unimodular column transform so the
/// pairing rows of the rays, taken in the given order, become lower
/// triangular. The spanned lattice is unchanged, but against the new basis
/// each enumeration level is pinned exactly by one constraint row, so the
/// coordinate walk never explores an infeasible prefix. Returns `None` when
/// the rays do not form a basis of the ambient space.
fn triangularized_basis(
    basis: &[Vec<Int>],
    rays: &[&IntVec],
    n: usize,
) -> Option<Vec<Vec<Int>>> {
    if rays.len() != n {
        return None;
    }
    let mut w: Vec<IntVec> = rays.iter().map(|r| ray_pairing_row(basis, r, n)).collect();
    let mut b: Vec<Vec<Int>> = basis.to_vec();
    for r in 0..n {
        loop {
            let mut piv: Option<usize> = None;
            for c in r..n {
                if !w[r][c].is_zero()
                    && piv.map_or(true, |p: usize| w[r][c].abs() < w[r][p].abs())
                {
                    piv = Some(c);
                }
            }
            let p = piv?;
            if p != r {
                for row in w.iter_mut() {
                    row.swap(p, r);
                }
                b.swap(p, r);
            }
            let mut done = true;
            for c in r + 1..n {
                if w[r][c].is_zero() {
                    continue;
                }
                let q = &w[r][c] / &w[r][r];
                if !q.is_zero() {
                    for row in w.iter_mut() {
                        let t = &row[c] - &q * &row[r];
                        row[c] = t;
                    }
                    for i in 0..n {
                        let t = &b[c][i] - &q * &b[r][i];
                        b[c][i] = t;
                    }
                }
                if !w[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if w[r][r].is_negative() {
            for row in w.iter_mut() {
                row[r] = -row[r].clone();
            }
            for i in 0..n {
                b[r][i] = -b[r][i].clone();
            }
        }
    }
    Some(b)
}

/// Whether the ray box `[lo_j, hi_j]` contains a lattice point whose
/// pairing with ray `below` is strictly less than `bound`.
pub fn ray_box_has_point_below(
    lat: &QLattice,
    rays: &[IntVec],
    lo: &[Rat],
    hi: &[Rat],
    below: usize,
    bound: &Rat,
) -> Result<bool, LatticeError> {
    assert_eq!(rays.len(), lo.len());
    assert_eq!(rays.len(), hi.len());
    let n = lat.ambient_rank();
    let basis = lat.integer_part().basis_columns();
    // Triangularize with ray `below` first: its box window and the strict
    // bound then pin the outermost coordinate, so an empty region dies at
    // the first level instead of after a deep walk.
    let order: Vec<&IntVec> = std::iter::once(&rays[below])
        .chain(rays.iter().enumerate().filter(|(j, _)| *j != below).map(|(_, r)| r))
        .collect();
    let basis = triangularized_basis(&basis, &order, n).unwrap_or(basis);
    let d = Rat::from_integer(lat.denom().clone());
    let mut region = LinearRegion::new(n);
    for (j, ray) in rays.iter().enumerate() {
        assert_eq!(ray.len(), n);
        let w = ray_pairing_row(&basis, ray, n);
        region.add_two_sided(w, &(&lo[j] * &d), &(&hi[j] * &d));
    }
    let w = ray_pairing_row(&basis, &rays[below], n);
    region.add_strict_complement_of_lower(w, &(bound * &d));
    Ok(!region.count()?.is_zero())
}

/// Points of a rational lattice whose pairings with the given rays fall in
/// the closed box `[lo_j, hi_j]`. The rays must span the ambient space,
/// otherwise the region is unbounded. Output is sorted lexicographically.
pub fn lattice_points_in_ray_box(
    lat: &QLattice,
    rays: &[IntVec],
    lo: &[Rat],
    hi: &[Rat],
) -> Result<Vec<RatVec>, LatticeError> {
    assert_eq!(rays.len(), lo.len());
    assert_eq!(rays.len(), hi.len());
    let n = lat.ambient_rank();
    let basis = lat.integer_part().basis_columns();
    let order: Vec<&IntVec> = rays.iter().collect();
    let basis = triangularized_basis(&basis, &order, n).unwrap_or(basis);
    let d = Rat::from_integer(lat.denom().clone());
    let mut region = LinearRegion::new(n);
    for (j, ray) in rays.iter().enumerate() {
        assert_eq!(ray.len(), n);
        let w = ray_pairing_row(&basis, ray, n);
        region.add_two_sided(w, &(&lo[j] * &d), &(&hi[j] * &d));
    }
    let zs = region.enumerate()?;
    let mut pts: Vec<RatVec> = zs
        .iter()
        .map(|z| {
            (0..n)
                .map(|i| {
                    let mut acc = Int::zero();
                    for k in 0..n {
                        acc += &basis[k][i] * &z[k];
                    }
                    Rat::from_integer(acc) / &d
                })
                .collect()
        })
        .collect();
    pts.sort_by(|a, b| super::vecs::lex_cmp(a, b));
    Ok(pts)
}

/// Ray-pairing coordinates of a point: y_j = <u, ray_j>.
pub fn ray_coordinates(u: &[Rat], rays: &[IntVec]) -> RatVec {
    rays.iter().map(|r| super::vecs::dot_rr(u, &to_rat(r))).collect()
}
