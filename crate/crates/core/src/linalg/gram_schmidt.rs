//! Order-sensitive Gram–Schmidt decomposition `M_π = XQ`.
//!
//! Column `k` of `X` is the normalized residual of regressing the `k`-th
//! ordered column of `M` on the basis vectors built before it. Column `k` of
//! the upper-triangular `Q` holds those regression coefficients above the
//! diagonal and the residual norm on it.

use serde::Serialize;

use super::design::{DesignMatrix, Permutation};
use super::matrix::{axpy, dot, norm, Matrix};
use super::triangular::invert_upper_triangular;
use crate::error::{Error, Result};

/// Relative rank tolerance: a residual shorter than this fraction of its
/// original column is treated as exact collinearity.
pub const RANK_TOL: f64 = 1e-10;

/// Residuals shorter than this fraction of the column get a second
/// orthogonalization sweep.
const REORTH_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Serialize)]
pub struct GsDecomposition {
    x: Matrix,
    q: Matrix,
    q_inv: Matrix,
    order: Permutation,
    names: Vec<String>,
}

impl GsDecomposition {
    /// Orthonormal basis, columns in orthogonalization order.
    pub fn x(&self) -> &Matrix {
        &self.x
    }

    /// Upper-triangular change of basis with `Q[k][k] = ‖r̂_k‖ > 0`.
    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn q_inv(&self) -> &Matrix {
        &self.q_inv
    }

    pub fn order(&self) -> &Permutation {
        &self.order
    }

    /// Column labels in orthogonalization order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn p(&self) -> usize {
        self.q.ncols()
    }

    /// Row `i` of `Q⁻¹`, the vector `q_i`.
    pub fn q_row(&self, i: usize) -> Vec<f64> {
        self.q_inv.row(i)
    }

    /// ‖q_i‖.
    pub fn q_row_norm(&self, i: usize) -> f64 {
        norm(&self.q_row(i))
    }

    /// Residual norm of the `i`-th ordered column, `Q[i][i]`.
    pub fn residual_norm(&self, i: usize) -> f64 {
        self.q[(i, i)]
    }

    /// `Qα` for coefficients given in orthogonalization order.
    pub fn to_gs_coefficients(&self, alpha_ordered: &[f64]) -> Vec<f64> {
        self.q.matvec(alpha_ordered)
    }

    /// `Q⁻¹β`, the naive-model coefficients in orthogonalization order.
    pub fn to_naive_coefficients(&self, beta: &[f64]) -> Vec<f64> {
        self.q_inv.matvec(beta)
    }

    /// Reorders values indexed by original column into orthogonalization
    /// order.
    pub fn ordered<T: Copy>(&self, by_column: &[T]) -> Vec<T> {
        self.order
            .as_slice()
            .iter()
            .map(|&j| by_column[j])
            .collect()
    }

    /// Inverse of [`GsDecomposition::ordered`].
    pub fn by_column<T: Copy + Default>(&self, ordered: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); ordered.len()];
        for (k, &j) in self.order.as_slice().iter().enumerate() {
            out[j] = ordered[k];
        }
        out
    }
}

/// Modified Gram–Schmidt with one conditional re-orthogonalization sweep.
pub fn gram_schmidt(m: &DesignMatrix, order: &Permutation) -> Result<GsDecomposition> {
    let (n, p) = (m.n(), m.p());
    if order.len() != p {
        return Err(Error::InvalidOrder(format!(
            "order has {} entries, design has {p} columns",
            order.len()
        )));
    }
    let mut x = Matrix::zeros(n, p);
    let mut q = Matrix::zeros(p, p);

    for (k, &col) in order.as_slice().iter().enumerate() {
        let mut v = m.col(col).to_vec();
        let original = norm(&v);

        for j in 0..k {
            let r = dot(x.col(j), &v);
            axpy(-r, x.col(j), &mut v);
            q[(j, k)] = r;
        }
        let mut len = norm(&v);
        if k > 0 && len < REORTH_THRESHOLD * original {
            for j in 0..k {
                let r = dot(x.col(j), &v);
                axpy(-r, x.col(j), &mut v);
                q[(j, k)] += r;
            }
            len = norm(&v);
        }
        if !(len > RANK_TOL * original) {
            return Err(Error::RankDeficient {
                position: k + 1,
                name: m.col_names()[col].clone(),
            });
        }
        let xk = x.col_mut(k);
        for (dst, src) in xk.iter_mut().zip(&v) {
            *dst = src / len;
        }
        q[(k, k)] = len;
    }

    let q_inv = invert_upper_triangular(&q)?;
    let names = order
        .as_slice()
        .iter()
        .map(|&j| m.col_names()[j].clone())
        .collect();
    Ok(GsDecomposition {
        x,
        q,
        q_inv,
        order: order.clone(),
        names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(rows: &[[f64; 2]]) -> DesignMatrix {
        DesignMatrix::unlabeled(Matrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn identity_padded_design_is_its_own_basis() {
        let m = Matrix::from_rows(&[
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0],
        ]);
        let d = DesignMatrix::unlabeled(m.clone()).unwrap();
        let gs = gram_schmidt(&d, &Permutation::identity(3)).unwrap();
        assert_eq!(gs.x(), &m);
        assert_eq!(gs.q(), &Matrix::identity(3));
    }

    #[test]
    fn two_vector_hand_example() {
        let d = design(&[[1.0, 1.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]]);
        let gs = gram_schmidt(&d, &Permutation::identity(2)).unwrap();
        assert_eq!(gs.x().col(0), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(gs.x().col(1), &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(gs.q(), &Matrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]));
    }

    #[test]
    fn exact_collinearity_is_rank_deficient_at_second_position() {
        let d = design(&[[1.0, 2.0], [2.0, 4.0], [-1.0, -2.0], [0.5, 1.0]]);
        match gram_schmidt(&d, &Permutation::identity(2)) {
            Err(Error::RankDeficient { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected RankDeficient, got {other:?}"),
        }
    }

    #[test]
    fn first_column_is_normalized_input() {
        let d = design(&[[3.0, 1.0], [4.0, 0.0], [0.0, 2.0]]);
        let gs = gram_schmidt(&d, &Permutation::new(vec![1, 0]).unwrap()).unwrap();
        let c = d.col(1);
        let len = norm(c);
        for (a, b) in gs.x().col(0).iter().zip(c) {
            assert_eq!(*a, b / len);
        }
        assert_eq!(gs.names(), &["m2".to_string(), "m1".to_string()]);
    }

    #[test]
    fn order_length_must_match() {
        let d = design(&[[3.0, 1.0], [4.0, 0.0], [0.0, 2.0]]);
        assert!(matches!(
            gram_schmidt(&d, &Permutation::identity(3)),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn nearly_collinear_columns_stay_orthogonal() {
        // Second column differs from the first by 1e-7 in one entry.
        let d = design(&[[1.0, 1.0], [1.0, 1.0 + 1e-7], [1.0, 1.0], [1.0, 1.0]]);
        let gs = gram_schmidt(&d, &Permutation::identity(2)).unwrap();
        let xtx = gs.x().gram();
        assert!(xtx.sub(&Matrix::identity(2)).max_abs() < 1e-10);
    }
}
