//! Dense row-major matrices over a [`FiniteField`] and Gaussian elimination.

use crate::field::{Elem, FiniteField};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.iter_rows().map(<[Elem]>::to_vec).collect()
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(i, t)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out[(i, j)], f.mul(a, other[(t, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, f: &FiniteField, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a != 0 {
                axpy(f, &mut out, a, self.row(i));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// In-place reduced row echelon form; returns pivot columns.
    /// Zero rows are moved to the bottom.
    pub fn rref(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self[(r, c)]).expect("pivot is nonzero");
            for x in self.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let factor = f.neg(self[(i, c)]);
                    let (dst, src) = self.two_rows(i, r);
                    axpy(f, dst, factor, src);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Row echelon form only (no back substitution); returns the rank.
    pub fn echelon_rank(&mut self, f: &FiniteField) -> usize {
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self[(r, c)]).expect("pivot is nonzero");
            for i in r + 1..self.rows {
                if self[(i, c)] != 0 {
                    let factor = f.neg(f.mul(self[(i, c)], inv));
                    let (dst, src) = self.two_rows(i, r);
                    axpy(f, dst, factor, src);
                }
            }
            r += 1;
        }
        r
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.clone().echelon_rank(f)
    }

    /// Rows of the reduced echelon form with zero rows dropped.
    pub fn row_space_basis(&self, f: &FiniteField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref(f);
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    /// Basis of `{x : M x^T = 0}`, one vector per free column, in reduced form.
    pub fn nullspace(&self, f: &FiniteField) -> Matrix {
        let (r, pivots) = self.row_space_basis(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Matrix::zeros(0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r[(i, free)]);
            }
            out.push_row(&v);
        }
        out
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self, f: &FiniteField) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug[(i, n + i)] = 1;
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_columns(&cols))
    }

    /// One solution of `x M = b` (x a row vector) plus a basis of the
    /// homogeneous solutions, or `None` when the system is inconsistent.
    pub fn solve_left(&self, f: &FiniteField, b: &[Elem]) -> Option<(Vec<Elem>, Matrix)> {
        assert_eq!(b.len(), self.cols);
        // x M = b  <=>  M^T x^T = b^T
        let mt = self.transpose();
        let unknowns = self.rows;
        let mut aug = Matrix::zeros(mt.rows, unknowns + 1);
        for i in 0..mt.rows {
            aug.row_mut(i)[..unknowns].copy_from_slice(mt.row(i));
            aug[(i, unknowns)] = b[i];
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&unknowns) {
            return None;
        }
        let mut x = vec![0; unknowns];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug[(i, unknowns)];
        }
        let kernel = mt.nullspace(f);
        Some((x, kernel))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn two_rows(&mut self, dst: usize, src: usize) -> (&mut [Elem], &[Elem]) {
        let c = self.cols;
        if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * c);
            (&mut lo[dst * c..(dst + 1) * c], &hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * c);
            (&mut hi[..c], &lo[src * c..(src + 1) * c])
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;

    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

/// `dst += a * src`
#[inline]
pub fn axpy(f: &FiniteField, dst: &mut [Elem], a: Elem, src: &[Elem]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add(*d, f.mul(a, s));
        }
    }
}

pub fn dot(f: &FiniteField, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Incremental echelon basis: answers "does this vector increase the rank?"
/// without re-eliminating the whole matrix.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, f: &FiniteField, v: &mut [Elem]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let factor = f.neg(v[p]);
                axpy(f, v, factor, row);
            }
        }
    }

    pub fn contains(&self, f: &FiniteField, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns true if the rank increased.
    pub fn insert(&mut self, f: &FiniteField, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            if row[p] != 0 {
                let factor = f.neg(row[p]);
                axpy(f, row, factor, &w);
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}
