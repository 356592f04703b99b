//! Dense exact linear algebra over [`Rational`].
//!
//! Elimination always pivots on the first nonzero entry of the leftmost unresolved
//! column, scanning top to bottom. Nothing here depends on entry magnitudes, so
//! every result is a deterministic function of the input.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};

/// Column vector.
pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(Mat {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix literal, mostly for tests and examples.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Mat {
            rows: rows.len(),
            cols: C,
            data: rows.iter().flatten().map(|&x| int(x)).collect(),
        }
    }

    /// Stacks `columns` side by side; `rows` fixes the shape when the list is empty.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows));
        Mat::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self - λ·I`
    pub fn shift(&self, lambda: &Rational) -> Mat {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= lambda;
        }
        m
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| &self[(i, i)])
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// The listed columns of `self`, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Block-diagonal matrix with `blocks` along the diagonal.
    pub fn block_diagonal(blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(Mat::rows).sum();
        let m: usize = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn inverse(&self) -> Result<Mat> {
        let n = self.ensure_square()?;
        let aug = self.hstack(&Mat::identity(n));
        let Rref { reduced, pivots } = rref(&aug);
        if !pivots.iter().copied().take(n).eq(0..n) {
            return Err(Error::Singular);
        }
        Ok(Mat::from_fn(n, n, |i, j| reduced[(i, n + j)].clone()))
    }

    /// Determinant by fraction-based elimination.
    pub fn determinant(&self) -> Result<Rational> {
        let n = self.ensure_square()?;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                for k in c..n {
                    let delta = &f * &m[(c, k)];
                    m[(r, k)] -= delta;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for Mat {
    /// Right-aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| cells[i * self.cols + j].len())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>w$}", cells[i * self.cols + j], w = widths[j]))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    /// Strictly increasing.
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Mat) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a[(row, col)].recip();
        for j in col..a.cols {
            a[(row, j)] *= &inv;
        }
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for j in col..a.cols {
                if a[(row, j)].is_zero() {
                    continue;
                }
                let delta = &f * &a[(row, j)];
                a[(r, j)] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { reduced: a, pivots }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).pivots.len()
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of(dim: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Mat::from_columns(dim, vectors))
}

/// Canonical nullspace basis: one vector per free column, in ascending order, with
/// a 1 in that free slot and the pivot slots read off the RREF.
pub fn nullspace_basis(m: &Mat) -> Vec<Vector> {
    let Rref { reduced, pivots } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Basis of the column space: the pivot columns of `m` itself.
pub fn column_space_basis(m: &Mat) -> Vec<Vector> {
    rref(m).pivots.iter().map(|&j| m.column(j)).collect()
}

/// Solves `b · X = c` exactly for `X`.
pub fn solve_right(b: &Mat, c: &Mat) -> Result<Mat> {
    if b.rows != c.rows {
        return Err(Error::DimensionMismatch(format!(
            "left side has {} rows, right side {}",
            b.rows, c.rows
        )));
    }
    let k = b.cols;
    let Rref { reduced, pivots } = rref(&b.hstack(c));
    let basic = pivots.iter().take_while(|&&p| p < k).count();
    if basic < k {
        return Err(Error::RankDeficient);
    }
    if pivots.len() > k {
        return Err(Error::NoSolution);
    }
    // With b of full column rank, pivots are exactly 0..k.
    Ok(Mat::from_fn(k, c.cols, |i, j| reduced[(i, k + j)].clone()))
}

/// `m^k`, with `m^0 = I`.
pub fn mat_pow(m: &Mat, k: usize) -> Mat {
    assert!(m.is_square(), "mat_pow needs a square matrix");
    let mut result = Mat::identity(m.rows);
    let mut base = m.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Greedily keeps each candidate that raises the rank of `existing ∪ kept`.
pub fn extend_independent(existing: &[Vector], candidates: &[Vector]) -> Vec<Vector> {
    let Some(dim) = existing.first().or(candidates.first()).map(Vec::len) else {
        return Vec::new();
    };
    let mut echelon = Echelon::new(dim);
    for v in existing {
        echelon.insert(v);
    }
    candidates
        .iter()
        .filter(|c| echelon.insert(c))
        .cloned()
        .collect()
}

/// Incrementally maintained row-reduced spanning set, used to test membership.
struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
        }
    }

    /// Adds `v` if it is outside the current span; reports whether it was added.
    fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim, "vectors must share one dimension");
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// True iff the two lists span the same subspace.
pub fn same_span(dim: usize, a: &[Vector], b: &[Vector]) -> bool {
    let ra = rank_of(dim, a);
    let rb = rank_of(dim, b);
    let both: Vec<Vector> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of(dim, &both) == ra
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use proptest::prelude::*;

    fn example2() -> Mat {
        Mat::from_ints(&[[0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    }

    fn example3() -> Mat {
        Mat::from_ints(&[[2, 0, 2, 1], [0, 2, 1, 1], [0, 0, 2, 2], [0, 0, 0, 4]])
    }

    fn e(dim: usize, i: usize) -> Vector {
        unit_vector(dim, i)
    }

    #[test]
    fn rref_examples() {
        let id = Mat::identity(3);
        assert_eq!(rref(&id), Rref { reduced: id.clone(), pivots: vec![0, 1, 2] });

        let shifted = Mat::from_ints(&[[0, 0, 2], [0, 0, 1], [0, 0, 0]]);
        let r = rref(&shifted);
        assert_eq!(r.reduced, Mat::from_ints(&[[0, 0, 1], [0, 0, 0], [0, 0, 0]]));
        assert_eq!(r.pivots, vec![2]);

        let z = Mat::zeros(2, 2);
        assert_eq!(rref(&z), Rref { reduced: z.clone(), pivots: vec![] });
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&example2()), 3);
        assert_eq!(rank(&Mat::zeros(4, 4)), 0);
        assert_eq!(rank(&Mat::identity(5)), 5);
    }

    #[test]
    fn nullspace_examples() {
        let shifted = Mat::from_ints(&[[0, 0, 2], [0, 0, 1], [0, 0, 0]]);
        assert_eq!(nullspace_basis(&shifted), vec![e(3, 0), e(3, 1)]);

        let a3 = mat_pow(&example2(), 3);
        assert_eq!(nullspace_basis(&a3), vec![e(4, 0), e(4, 1), e(4, 2)]);

        assert!(nullspace_basis(&Mat::identity(3)).is_empty());
    }

    #[test]
    fn nullspace_reads_pivots_off_rref() {
        let m = Mat::from_ints(&[[1, 2, 3], [2, 4, 7]]);
        assert_eq!(nullspace_basis(&m), vec![vec![int(-2), int(1), int(0)]]);
    }

    #[test]
    fn solve_right_examples() {
        let c = Mat::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(solve_right(&Mat::identity(2), &c).unwrap(), c);

        let two = Mat::identity(3).scale(&int(2));
        assert_eq!(
            solve_right(&two, &Mat::identity(3)).unwrap(),
            Mat::identity(3).scale(&frac(1, 2))
        );

        let b = Mat::from_columns(4, &[e(4, 0), e(4, 1), e(4, 2)]);
        let c = &example3() * &b;
        assert_eq!(
            solve_right(&b, &c).unwrap(),
            Mat::from_ints(&[[2, 0, 2], [0, 2, 1], [0, 0, 2]])
        );
    }

    #[test]
    fn solve_right_errors() {
        let b = Mat::from_columns(3, &[e(3, 0)]);
        let c = Mat::from_columns(3, &[e(3, 1)]);
        assert_eq!(solve_right(&b, &c), Err(Error::NoSolution));

        let dep = Mat::from_columns(3, &[e(3, 0), e(3, 0)]);
        assert_eq!(
            solve_right(&dep, &Mat::from_columns(3, &[e(3, 0)])),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn powers() {
        let a3 = mat_pow(&example2(), 3);
        let mut expected = Mat::zeros(4, 4);
        expected[(0, 3)] = int(1);
        assert_eq!(a3, expected);

        assert_eq!(mat_pow(&example3(), 0), Mat::identity(4));

        let shift = Mat::from_fn(5, 5, |i, j| if j == i + 1 { int(1) } else { int(0) });
        assert!(mat_pow(&shift, 5).is_zero());
        assert!(!mat_pow(&shift, 4).is_zero());
    }

    #[test]
    fn extend_examples() {
        let sum = vec![int(1), int(1), int(0)];
        assert_eq!(
            extend_independent(&[e(3, 0)], &[e(3, 0), e(3, 1), sum]),
            vec![e(3, 1)]
        );
        let std3 = vec![e(3, 0), e(3, 1), e(3, 2)];
        assert_eq!(extend_independent(&[], &std3), std3);

        let kernel = nullspace_basis(&mat_pow(&example2(), 3));
        let std4: Vec<Vector> = (0..4).map(|i| e(4, i)).collect();
        assert_eq!(extend_independent(&kernel, &std4), vec![e(4, 3)]);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Mat::from_ints(&[[2, 1], [7, 4]]);
        assert_eq!(m.determinant().unwrap(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert_eq!(Mat::from_ints(&[[1, 2], [2, 4]]).inverse(), Err(Error::Singular));
        assert_eq!(example3().determinant().unwrap(), int(32));
    }

    #[test]
    fn display_aligns_columns() {
        let m = Mat::from_rows(vec![vec![frac(1, 2), int(-3)], vec![int(0), int(4)]]).unwrap();
        assert_eq!(m.to_string(), "1/2 -3\n  0  4\n");
    }

    fn small_mat(max: usize) -> impl Strategy<Value = Mat> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec((-3i64..=3, 1i64..=2), r * c).prop_map(move |xs| {
                Mat::from_row_major(r, c, xs.into_iter().map(|(n, d)| frac(n, d)).collect())
                    .unwrap()
            })
        })
    }

    /// Low-rank square matrices, so nullspaces are usually nontrivial.
    fn low_rank_square(max: usize) -> impl Strategy<Value = Mat> {
        (1..=max, 1..=max).prop_flat_map(|(n, k)| {
            (small_mat_exact(n, k), small_mat_exact(k, n)).prop_map(|(a, b)| &a * &b)
        })
    }

    fn small_mat_exact(r: usize, c: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(-2i64..=2, r * c).prop_map(move |xs| {
            Mat::from_row_major(r, c, xs.into_iter().map(int).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_mat(6)) {
            prop_assert_eq!(rank(&m) + nullspace_basis(&m).len(), m.cols());
        }

        #[test]
        fn nullspace_vectors_are_annihilated(m in low_rank_square(6)) {
            for v in nullspace_basis(&m) {
                prop_assert!(is_zero_vector(&m.mul_vec(&v)));
            }
        }

        #[test]
        fn rref_is_idempotent(m in small_mat(6)) {
            let once = rref(&m);
            let twice = rref(&once.reduced);
            prop_assert_eq!(&twice.reduced, &once.reduced);
            prop_assert!(once.pivots.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn solve_right_round_trip(
            (b, x) in (1usize..=5, 1usize..=4, 1usize..=3)
                .prop_flat_map(|(r, k, c)| (small_mat_exact(r, k), small_mat_exact(k, c))),
        ) {
            let c = &b * &x;
            if let Ok(sol) = solve_right(&b, &c) {
                prop_assert_eq!(&b * &sol, c);
            } else {
                prop_assert!(rank(&b) < b.cols());
            }
        }

        /// Preimages of a range basis together with a nullspace basis span everything.
        #[test]
        fn preimages_and_kernel_form_a_basis(
            m in low_rank_square(6),
            seeds in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..10),
        ) {
            let n = m.rows();
            let mut preimages = Vec::new();
            let mut images = Vec::new();
            let tries = seeds
                .iter()
                .map(|s| s[..n].iter().map(|&x| int(x)).collect::<Vector>())
                .chain((0..n).map(|i| e(n, i)));
            for v in tries {
                let img = m.mul_vec(&v);
                if !extend_independent(&images, std::slice::from_ref(&img)).is_empty() {
                    images.push(img);
                    preimages.push(v);
                }
            }
            prop_assert_eq!(images.len(), rank(&m));
            let mut all = preimages;
            all.extend(nullspace_basis(&m));
            prop_assert_eq!(all.len(), n);
            prop_assert_eq!(rank_of(n, &all), n);
        }
    }
}
