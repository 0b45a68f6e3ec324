use std::fmt;
use std::ops::{Index, IndexMut};

use serde::Serialize;

/// Dense real matrix stored column-major.
#[derive(Clone, PartialEq, Serialize)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![0.0; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from a column-major buffer.
    ///
    /// Panics if `data.len() != nrows * ncols`.
    pub fn from_col_major(nrows: usize, ncols: usize, data: Vec<f64>) -> Self {
        assert_eq!(
            data.len(),
            nrows * ncols,
            "buffer length does not match shape"
        );
        Self { nrows, ncols, data }
    }

    /// Builds a matrix from row slices. All rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_columns<C: AsRef<[f64]>>(cols: &[C]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, |c| c.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for c in cols {
            let c = c.as_ref();
            assert_eq!(c.len(), nrows, "ragged columns");
            data.extend_from_slice(c);
        }
        Self { nrows, ncols, data }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.ncols).map(|j| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols, rhs.nrows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.nrows, rhs.ncols);
        for j in 0..rhs.ncols {
            let dst = j * self.nrows;
            for k in 0..self.ncols {
                let r = rhs[(k, j)];
                if r == 0.0 {
                    continue;
                }
                let src = self.col(k);
                for (o, &a) in out.data[dst..dst + self.nrows].iter_mut().zip(src) {
                    *o += a * r;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(
            self.ncols,
            v.len(),
            "vector length differs from column count"
        );
        let mut out = vec![0.0; self.nrows];
        for (j, &vj) in v.iter().enumerate() {
            axpy(vj, self.col(j), &mut out);
        }
        out
    }

    /// Mᵀv without materialising the transpose.
    pub fn tr_matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.nrows, v.len(), "vector length differs from row count");
        (0..self.ncols).map(|j| dot(self.col(j), v)).collect()
    }

    /// MᵀM.
    pub fn gram(&self) -> Matrix {
        let p = self.ncols;
        let mut g = Matrix::zeros(p, p);
        for i in 0..p {
            for j in i..p {
                let v = dot(self.col(i), self.col(j));
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        g
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Copy with columns reordered so that column `k` of the result is
    /// column `order[k]` of `self`.
    pub fn select_columns(&self, order: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.nrows * order.len());
        for &j in order {
            data.extend_from_slice(self.col(j));
        }
        Matrix {
            nrows: self.nrows,
            ncols: order.len(),
            data,
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.ncols).all(|j| (j + 1..self.nrows).all(|i| self[(i, j)] == 0.0))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.nrows && j < self.ncols);
        &self.data[j * self.nrows + i]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.nrows && j < self.ncols);
        &mut self.data[j * self.nrows + i]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols)
                .map(|j| format!("{:>12.6}", self[(i, j)]))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    // Scaled to avoid overflow on large-magnitude columns.
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let ss: f64 = a.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * ss.sqrt()
}

/// y += a·x
#[inline]
pub fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}
