//! Multicollinearity and planning metrics: VIF, condition number, the Δ
//! ratio and the power-equivalent sample size.
//!
//! For position `i` of a Gram–Schmidt decomposition with GS coefficients `β`
//! and `q_i` the `i`-th row of `Q⁻¹` (so that `q_iᵀβ = α_i`),
//!
//! ```text
//! Δ_i = β_i ‖q_i‖ / (q_iᵀβ)
//! ```
//!
//! is the ratio of the GS and naive noncentralities for testing variable `i`.
//! `Δ_i > 1` (with `α_i, β_i > 0`) means the GS test is the more powerful one,
//! and a naive study needs `Δ_i²` times as many observations to match it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, gram_schmidt, norm, DesignMatrix, GsDecomposition, Matrix, Permutation};
use crate::regression::gs_fit;

const JACOBI_TOL: f64 = 1e-12;
const JACOBI_SWEEPS: usize = 100;

/// Variance inflation factors `1/(1 − R²_j)`, one per column.
///
/// `R²_j` comes from orthogonalizing with column `j` moved last: its residual
/// norm is `Q_pp`, so `VIF_j = ‖m_j‖² / Q_pp²` on a centered design.
pub fn vif(m: &DesignMatrix) -> Result<Vec<f64>> {
    (0..m.p()).map(|j| vif_column(m, j)).collect()
}

/// VIF of a single column `j`.
pub fn vif_column(m: &DesignMatrix, j: usize) -> Result<f64> {
    if !m.is_centered() {
        return Err(Error::NotCentered);
    }
    let p = m.p();
    if p == 1 {
        return Ok(1.0);
    }
    let gs = gram_schmidt(m, &Permutation::moving_last(p, j))?;
    Ok((norm(m.col(j)) / gs.residual_norm(p - 1)).powi(2))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues(a: &Matrix) -> Vec<f64> {
    let n = a.nrows();
    let mut a = a.clone();
    let frob = a.as_slice().iter().map(|v| v * v).sum::<f64>().sqrt();
    for _ in 0..JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// `√(λ_max / λ_min)` of `MᵀM`.
pub fn condition_number(m: &DesignMatrix) -> Result<f64> {
    let ev = symmetric_eigenvalues(&m.values().gram());
    let (min, max) = (ev[0], ev[ev.len() - 1]);
    if !(min > max * f64::EPSILON * m.p() as f64) {
        return Err(Error::SingularMatrix(format!(
            "smallest eigenvalue of MᵀM is {min:e}"
        )));
    }
    Ok((max / min).sqrt())
}

/// Condition number after centering and scaling the columns to unit
/// variance, so that it no longer depends on measurement units.
pub fn standardized_condition_number(m: &DesignMatrix) -> Result<f64> {
    condition_number(&m.standardized(true)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollinearityLevel {
    Weak,
    ModerateStrong,
    Severe,
}

impl CollinearityLevel {
    /// Below 30 weak, 30–100 moderate/strong, above 100 severe.
    pub fn from_condition_number(cn: f64) -> Self {
        if cn < 30.0 {
            CollinearityLevel::Weak
        } else if cn <= 100.0 {
            CollinearityLevel::ModerateStrong
        } else {
            CollinearityLevel::Severe
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            CollinearityLevel::Weak => "weak multicollinearity",
            CollinearityLevel::ModerateStrong => "moderate/strong multicollinearity",
            CollinearityLevel::Severe => "severe multicollinearity",
        }
    }
}

/// `Δ_i` for GS coefficients `beta` (orthogonalization order).
pub fn delta(decomp: &GsDecomposition, beta: &[f64], i: usize) -> Result<f64> {
    if beta.len() != decomp.p() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for p = {}",
            beta.len(),
            decomp.p()
        )));
    }
    let q = decomp.q_row(i);
    let qn = norm(&q);
    let qb = dot(&q, beta);
    if qb.abs() <= 1e-14 * qn * norm(beta) {
        return Err(Error::UndefinedDelta { index: i });
    }
    Ok(beta[i] * qn / qb)
}

/// `Δ_i` from naive-model coefficients `alpha` (orthogonalization order),
/// via `β = Qα`.
pub fn delta_from_alpha(decomp: &GsDecomposition, alpha: &[f64], i: usize) -> Result<f64> {
    delta(decomp, &decomp.to_gs_coefficients(alpha), i)
}

/// [`delta`], except that `q_iᵀβ = 0` yields `+∞` with a
/// note instead of an error, or `NaN` if `β_i` is zero as well.
pub fn delta_or_limit(
    decomp: &GsDecomposition,
    beta: &[f64],
    i: usize,
) -> Result<(f64, Option<String>)> {
    match delta(decomp, beta, i) {
        Ok(d) => Ok((d, None)),
        Err(Error::UndefinedDelta { .. }) if beta[i] != 0.0 => Ok((
            f64::INFINITY,
            Some("naive coefficient is zero: only the GS test has power".to_string()),
        )),
        Err(Error::UndefinedDelta { .. }) => Ok((
            f64::NAN,
            Some("both coefficients are zero: no signal in either model".to_string()),
        )),
        Err(e) => Err(e),
    }
}

/// Power-equivalent naive sample size `n_A = Δ²·n_B`.
pub fn equivalent_sample_size(delta_i: f64, n_b: usize) -> Result<f64> {
    if !delta_i.is_finite() || delta_i == 0.0 {
        return Err(Error::InvalidDelta(delta_i));
    }
    if n_b == 0 {
        return Err(Error::InvalidScenario("n_B must be positive".into()));
    }
    Ok(delta_i * delta_i * n_b as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaBasis {
    /// Planning mode: Δ from known coefficients.
    TrueBeta,
    /// Analysis mode: Δ̂ from a fitted GS model.
    Estimated,
}

#[derive(Debug, Clone, Serialize)]
pub struct VariableDiagnostics {
    /// 1-based orthogonalization position.
    pub position: usize,
    pub name: String,
    pub delta: f64,
    pub vif: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaReport {
    pub per_variable: Vec<VariableDiagnostics>,
    pub condition_number: f64,
    pub collinearity: CollinearityLevel,
    pub basis: DeltaBasis,
}

/// Δ, VIF and CN for a centered design, given GS coefficients `beta` in
/// `order`.
///
/// Undefined ratios are reported as in [`delta_or_limit`].
pub fn delta_report(
    m: &DesignMatrix,
    order: &Permutation,
    beta: &[f64],
    basis: DeltaBasis,
) -> Result<DeltaReport> {
    let gs = gram_schmidt(m, order)?;
    let vifs = vif(m)?;
    let cn = condition_number(m)?;
    let per_variable = (0..m.p())
        .map(|i| {
            let (d, note) = delta_or_limit(&gs, beta, i)?;
            Ok(VariableDiagnostics {
                position: i + 1,
                name: gs.names()[i].clone(),
                delta: d,
                vif: vifs[order.as_slice()[i]],
                note,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DeltaReport {
        per_variable,
        condition_number: cn,
        collinearity: CollinearityLevel::from_condition_number(cn),
        basis,
    })
}

/// Empirical Δ̂ report from a GS fit of `y` on `m`.
pub fn estimated_delta_report(
    m: &DesignMatrix,
    y: &[f64],
    order: &Permutation,
) -> Result<DeltaReport> {
    let fit = gs_fit(m, y, order)?;
    delta_report(m, order, &fit.coef, DeltaBasis::Estimated)
}
