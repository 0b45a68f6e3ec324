use super::gram_schmidt::RANK_TOL;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Inverse of an upper-triangular matrix by column-wise back-substitution.
///
/// Fails with `SingularMatrix` when a diagonal entry is below
/// `RANK_TOL` relative to the largest diagonal magnitude.
pub fn invert_upper_triangular(q: &Matrix) -> Result<Matrix> {
    let p = q.nrows();
    if q.ncols() != p {
        return Err(Error::DimensionMismatch(format!(
            "expected square matrix, got {}x{}",
            p,
            q.ncols()
        )));
    }
    let scale = (0..p).fold(0.0f64, |m, i| m.max(q[(i, i)].abs()));
    for i in 0..p {
        let d = q[(i, i)];
        if !(d.abs() >= RANK_TOL * scale) || d == 0.0 {
            return Err(Error::SingularMatrix(format!(
                "diagonal entry {} is {d:e}",
                i + 1
            )));
        }
    }

    let mut inv = Matrix::zeros(p, p);
    for j in 0..p {
        // Solve Q·z = e_j; z is zero below row j.
        inv[(j, j)] = 1.0 / q[(j, j)];
        for i in (0..j).rev() {
            let mut s = 0.0;
            for k in i + 1..=j {
                s += q[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -s / q[(i, i)];
        }
    }
    Ok(inv)
}

/// Solves `Q z = b` for upper-triangular `Q`.
pub fn solve_upper(q: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let p = q.nrows();
    if b.len() != p {
        return Err(Error::DimensionMismatch(format!(
            "rhs has {} entries, expected {p}",
            b.len()
        )));
    }
    let mut z = vec![0.0; p];
    for i in (0..p).rev() {
        let d = q[(i, i)];
        if d == 0.0 {
            return Err(Error::SingularMatrix(format!("zero pivot at {}", i + 1)));
        }
        let s: f64 = (i + 1..p).map(|k| q[(i, k)] * z[k]).sum();
        z[i] = (b[i] - s) / d;
    }
    Ok(z)
}
