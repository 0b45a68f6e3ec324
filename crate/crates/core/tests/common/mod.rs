//! Independent reference implementations used as test oracles. None of them
//! shares code with the library's solvers.
#![allow(dead_code)]

use gsreg::distributions::Rng;
use gsreg::linalg::{DesignMatrix, Matrix};

pub fn random_matrix(n: usize, p: usize, rng: &mut Rng) -> Matrix {
    let cols: Vec<Vec<f64>> = (0..p)
        .map(|_| (0..n).map(|_| rng.normal()).collect())
        .collect();
    Matrix::from_columns(&cols)
}

pub fn random_design(n: usize, p: usize, seed: u64) -> DesignMatrix {
    DesignMatrix::unlabeled(random_matrix(n, p, &mut Rng::new(seed, 0))).unwrap()
}

pub fn random_vector(n: usize, rng: &mut Rng) -> Vec<f64> {
    (0..n).map(|_| rng.normal()).collect()
}

/// Dense row-major copy for the oracles below.
pub fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i)).collect()
}

/// `R` of a Householder QR (`p×p`, signs as they fall).
pub fn householder_r(m: &Matrix) -> Vec<Vec<f64>> {
    let (n, p) = (m.nrows(), m.ncols());
    let mut a = to_rows(m);
    for k in 0..p {
        let norm: f64 = (k..n).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (0..n).map(|i| if i < k { 0.0 } else { a[i][k] }).collect();
        v[k] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for j in 0..p {
            let s: f64 = (k..n).map(|i| v[i] * a[i][j]).sum::<f64>() * 2.0 / vv;
            for i in k..n {
                a[i][j] -= s * v[i];
            }
        }
    }
    (0..p)
        .map(|i| (0..p).map(|j| if j < i { 0.0 } else { a[i][j] }).collect())
        .collect()
}

/// Inverse by Gauss–Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&x, &y| aug[x][c].abs().total_cmp(&aug[y][c].abs()))
            .unwrap();
        aug.swap(c, piv);
        let d = aug[c][c];
        aug[c].iter_mut().for_each(|v| *v /= d);
        for r in 0..n {
            if r != c {
                let f = aug[r][c];
                let pivot_row = aug[c].clone();
                aug[r]
                    .iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(v, pv)| *v -= f * pv);
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn mat_vec(a: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// `MᵀM` and `Mᵀy` by explicit loops.
pub fn normal_equations(m: &Matrix, y: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let (n, p) = (m.nrows(), m.ncols());
    let g = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| (0..n).map(|r| m[(r, i)] * m[(r, j)]).sum())
                .collect()
        })
        .collect();
    let b = (0..p)
        .map(|j| (0..n).map(|r| m[(r, j)] * y[r]).sum())
        .collect();
    (g, b)
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn max_rel_err(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
        / scale
}
