use std::fmt::Debug;
use std::str::FromStr;

use super::fit::{check_response, FitResult, ModelKind};
use super::ols::ols_fit;
use crate::error::{Error, Result};
use crate::linalg::{dot, gram_schmidt, solve_upper, DesignMatrix, Matrix, Permutation};

/// Rule choosing the ridge constant `k` for a given problem.
pub trait RidgeKRule: Debug + Send + Sync {
    fn name(&self) -> &str;
    fn choose(&self, m: &DesignMatrix, y: &[f64]) -> Result<f64>;
}

/// `k = p·s²/‖α̂_OLS‖²` (Hoerl, Kennard and Baldwin). The `auto` default.
#[derive(Debug, Clone, Copy, Default)]
pub struct HoerlKennardBaldwin;

impl RidgeKRule for HoerlKennardBaldwin {
    fn name(&self) -> &str {
        "hkb"
    }

    fn choose(&self, m: &DesignMatrix, y: &[f64]) -> Result<f64> {
        ridge_k_auto(m, y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FixedK(pub f64);

impl RidgeKRule for FixedK {
    fn name(&self) -> &str {
        "fixed"
    }

    fn choose(&self, _m: &DesignMatrix, _y: &[f64]) -> Result<f64> {
        Ok(self.0)
    }
}

/// CLI-level policy: `auto` or a literal constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RidgeK {
    Auto,
    Fixed(f64),
}

impl RidgeK {
    pub fn rule(self) -> Box<dyn RidgeKRule> {
        match self {
            RidgeK::Auto => Box::new(HoerlKennardBaldwin),
            RidgeK::Fixed(k) => Box::new(FixedK(k)),
        }
    }
}

impl FromStr for RidgeK {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(RidgeK::Auto);
        }
        s.parse::<f64>().map(RidgeK::Fixed).map_err(|_| {
            Error::InvalidScenario(format!("ridge k must be 'auto' or a number, got {s:?}"))
        })
    }
}

/// Hoerl–Kennard–Baldwin ridge constant from the OLS fit.
pub fn ridge_k_auto(m: &DesignMatrix, y: &[f64]) -> Result<f64> {
    let ols = ols_fit(m, y)?;
    let norm2 = dot(&ols.coef, &ols.coef);
    if norm2 == 0.0 {
        return Err(Error::ZeroCoefficients);
    }
    Ok(m.p() as f64 * ols.sigma_hat2 / norm2)
}

/// Ridge regression `(MᵀM + kI)⁻¹Mᵀy` with t statistics referenced to
/// `t_{n−p}`.
///
/// The estimate comes from Gram–Schmidt on the augmented design
/// `[M; √k I]`, whose triangular factor `R` satisfies `RᵀR = MᵀM + kI`.
/// The covariance is `s²·A⁻¹MᵀMA⁻¹` with `A = MᵀM + kI` and `s²` taken from
/// the ridge residuals over `n − p` degrees of freedom.
pub fn ridge_fit(m: &DesignMatrix, y: &[f64], rule: &dyn RidgeKRule) -> Result<FitResult> {
    check_response(m.n(), y)?;
    if !m.is_centered() {
        return Err(Error::NotCentered);
    }
    let k = rule.choose(m, y)?;
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::NegativeRidge(k));
    }
    ridge_fit_with_k(m, y, k)
}

pub(crate) fn ridge_fit_with_k(m: &DesignMatrix, y: &[f64], k: f64) -> Result<FitResult> {
    let (n, p) = (m.n(), m.p());
    let root_k = k.sqrt();

    let mut aug = Matrix::zeros(n + p, p);
    for j in 0..p {
        let c = aug.col_mut(j);
        c[..n].copy_from_slice(m.col(j));
        c[n + j] = root_k;
    }
    let aug = DesignMatrix::new(aug, m.col_names().to_vec())?;
    let gs = gram_schmidt(&aug, &Permutation::identity(p))?;
    let mut y_aug = y.to_vec();
    y_aug.resize(n + p, 0.0);
    let rhs = gs.x().tr_matvec(&y_aug);
    let coef = solve_upper(gs.q(), &rhs)?;

    let fitted = m.values().matvec(&coef);
    let sse: f64 = y.iter().zip(&fitted).map(|(a, b)| (a - b) * (a - b)).sum();
    let df = n - p;
    let s2 = sse / df as f64;

    // A⁻¹ = R⁻¹R⁻ᵀ; G = M·A⁻¹; Var(α̂) = s²·GᵀG.
    let r_inv = gs.q_inv();
    let a_inv = r_inv.matmul(&r_inv.transpose());
    let g = m.values().matmul(&a_inv);
    let se = (0..p)
        .map(|j| (s2 * dot(g.col(j), g.col(j))).sqrt())
        .collect();

    let mut fit = FitResult::new(ModelKind::Ridge, m.col_names().to_vec(), coef, se, sse, df);
    fit.ridge_k = Some(k);
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::center_vector;

    fn centered_design() -> (DesignMatrix, Vec<f64>) {
        let m = Matrix::from_rows(&[
            [1.0, 2.0, 0.5],
            [2.0, 1.0, -1.0],
            [3.0, 4.0, 2.0],
            [4.0, 3.0, 0.0],
            [5.0, 6.5, 1.0],
            [6.0, 5.0, -0.5],
            [7.0, 7.5, 3.0],
        ]);
        let d = DesignMatrix::unlabeled(m).unwrap().centered().unwrap();
        let y = center_vector(&[1.0, 2.5, 2.0, 4.5, 4.0, 6.5, 6.0]);
        (d, y)
    }

    #[test]
    fn uncentered_design_is_refused() {
        let d = DesignMatrix::unlabeled(Matrix::from_rows(&[[1.0], [2.0], [4.0]])).unwrap();
        assert!(matches!(
            ridge_fit(&d, &[1.0, 2.0, 3.0], &FixedK(1.0)),
            Err(Error::NotCentered)
        ));
    }

    #[test]
    fn negative_k_is_refused() {
        let (d, y) = centered_design();
        assert!(matches!(
            ridge_fit(&d, &y, &FixedK(-0.1)),
            Err(Error::NegativeRidge(_))
        ));
    }

    #[test]
    fn zero_k_is_ols() {
        let (d, y) = centered_design();
        let r = ridge_fit(&d, &y, &FixedK(0.0)).unwrap();
        let o = ols_fit(&d, &y).unwrap();
        for i in 0..3 {
            assert!((r.coef[i] - o.coef[i]).abs() < 1e-10);
            assert!((r.se[i] - o.se[i]).abs() < 1e-10);
        }
        assert!((r.sse - o.sse).abs() < 1e-10);
    }

    #[test]
    fn parses_policy() {
        assert_eq!("auto".parse::<RidgeK>().unwrap(), RidgeK::Auto);
        assert_eq!("0.25".parse::<RidgeK>().unwrap(), RidgeK::Fixed(0.25));
        assert!("lots".parse::<RidgeK>().is_err());
    }

    #[test]
    fn hkb_formula_on_known_inputs() {
        // Orthonormal 3-column design with α̂ = (1, 1, 1) and s² = 1 gives k = 1.
        let mut rows = vec![[0.0; 3]; 7];
        for (i, row) in rows.iter_mut().enumerate().take(3) {
            row[i] = 1.0;
        }
        let d = DesignMatrix::unlabeled(Matrix::from_rows(&rows)).unwrap();
        // Rows 4..7 carry the residual: SSE = 4 over n − p = 4 df.
        let y = [1.0, 1.0, 1.0, 1.0, -1.0, 1.0, -1.0];
        let k = ridge_k_auto(&d, &y).unwrap();
        assert!((k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn noiseless_response_needs_no_shrinkage() {
        let (d, _) = centered_design();
        let y = d.values().matvec(&[0.5, -1.0, 2.0]);
        assert!(ridge_k_auto(&d, &y).unwrap() < 1e-20);
    }
}
