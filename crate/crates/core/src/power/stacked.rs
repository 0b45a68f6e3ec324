use serde::Serialize;

use super::analytic::{analytic_power, AnalyticModel};
use super::scenario::generate_scenario;
use super::simulate::fixed_design_power;
use crate::diagnostics::delta;
use crate::distributions::Rng;
use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, stack_replicates, DesignMatrix, Permutation};
use crate::regression::{GsFitter, NaiveFitter};

/// One `k` of the stacked-design experiment. Model B (GS) sees the pilot
/// stacked `k` times, model A (naive) stacked `round(Δ²k)` times.
#[derive(Debug, Clone, Serialize)]
pub struct StackedRow {
    pub k: usize,
    pub n_a: usize,
    pub n_b: usize,
    pub delta: f64,
    pub power_a: f64,
    pub mc_se_a: f64,
    pub power_b: f64,
    pub mc_se_b: f64,
    /// `power_A − power_B`.
    pub gap: f64,
    pub combined_se: f64,
    pub analytic_a: f64,
    pub analytic_b: f64,
}

/// Two-column centered and scaled pilot design from the power-study
/// generator (`M₂ = ρM₁ + Z₂`), on stream 0 of `seed`.
pub fn random_pilot(n0: usize, rho: f64, seed: u64) -> Result<DesignMatrix> {
    if n0 < 3 {
        return Err(Error::InvalidScenario(format!(
            "pilot needs at least 3 rows, got {n0}"
        )));
    }
    if !(rho > -1.0 && rho < 1.0) {
        return Err(Error::InvalidScenario(format!(
            "rho must lie in (-1, 1), got {rho}"
        )));
    }
    Ok(generate_scenario(rho, 1.0, 2, n0, &mut Rng::new(seed, 0))?.0)
}

/// Naive coefficients `(α₁, α₂)` on a two-column pilot that give `Δ₁ = target`.
///
/// From `β₁ = Q₁₁α₁ + Q₁₂α₂` and `Δ₁ = β₁‖q₁‖/α₁`:
/// `α₂ = α₁(Δ/‖q₁‖ − Q₁₁)/Q₁₂`.
pub fn pilot_alpha_for_delta(m0: &DesignMatrix, alpha1: f64, target: f64) -> Result<Vec<f64>> {
    if m0.p() != 2 {
        return Err(Error::InvalidScenario(format!(
            "pilot must have 2 columns, got {}",
            m0.p()
        )));
    }
    if !target.is_finite() || target == 0.0 || alpha1 == 0.0 {
        return Err(Error::InvalidDelta(target));
    }
    let gs = gram_schmidt(m0, &Permutation::identity(2))?;
    let q = gs.q();
    if q[(0, 1)].abs() < 1e-12 * q[(0, 0)] {
        return Err(Error::InvalidScenario(
            "pilot columns are orthogonal: Δ₁ is always 1".into(),
        ));
    }
    let alpha2 = alpha1 * (target / gs.q_row_norm(0) - q[(0, 0)]) / q[(0, 1)];
    Ok(vec![alpha1, alpha2])
}

/// Power of the naive test on `Δ²`-times more data against the GS test, as
/// the number of stacked copies `k` grows.
///
/// The pilot's first column is the tested variable. `alpha` holds the true
/// naive coefficients, and `y = Mα + σε` is simulated on each stacked design.
#[allow(clippy::too_many_arguments)]
pub fn stacked_power_experiment(
    m0: &DesignMatrix,
    alpha: &[f64],
    sigma: f64,
    k_grid: &[usize],
    level: f64,
    replicates: usize,
    seed: u64,
) -> Result<Vec<StackedRow>> {
    if alpha.len() != m0.p() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for p = {}",
            alpha.len(),
            m0.p()
        )));
    }
    let gs = gram_schmidt(m0, &Permutation::identity(m0.p()))?;
    let beta = gs.to_gs_coefficients(alpha);
    if alpha[0] * beta[0] < 0.0 {
        return Err(Error::SameSignViolation {
            alpha: alpha[0],
            beta: beta[0],
        });
    }
    let d = delta(&gs, &beta, 0)?;
    if d == 0.0 {
        return Err(Error::InvalidDelta(d));
    }
    let q_norm = gs.q_row_norm(0);
    let (n0, p) = (m0.n(), m0.p());

    k_grid
        .iter()
        .enumerate()
        .map(|(ki, &k)| {
            if k == 0 {
                return Err(Error::InvalidScenario("k must be >= 1".into()));
            }
            let k_a = ((d * d * k as f64).round() as usize).max(1);
            let design_a = stack_replicates(m0, k_a)?;
            let design_b = stack_replicates(m0, k)?;
            let base = (ki as u64) << 33;
            let a = fixed_design_power(
                &design_a,
                alpha,
                sigma,
                level,
                replicates,
                seed,
                base,
                &NaiveFitter,
            )?;
            let b = fixed_design_power(
                &design_b,
                alpha,
                sigma,
                level,
                replicates,
                seed,
                base | 1 << 32,
                &GsFitter::default(),
            )?;
            let (n_a, n_b) = (n0 * k_a, n0 * k);
            Ok(StackedRow {
                k,
                n_a,
                n_b,
                delta: d,
                power_a: a.empirical_power,
                mc_se_a: a.mc_se,
                power_b: b.empirical_power,
                mc_se_b: b.mc_se,
                gap: a.empirical_power - b.empirical_power,
                combined_se: a.mc_se.hypot(b.mc_se),
                analytic_a: analytic_power(
                    AnalyticModel::A,
                    alpha[0],
                    sigma,
                    q_norm / (k_a as f64).sqrt(),
                    n_a,
                    p,
                    level,
                )?,
                analytic_b: analytic_power(
                    AnalyticModel::B,
                    beta[0] * (k as f64).sqrt(),
                    sigma,
                    1.0,
                    n_b,
                    p,
                    level,
                )?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn pilot() -> DesignMatrix {
        DesignMatrix::unlabeled(Matrix::from_rows(&[
            [1.0, 0.8],
            [-0.5, 0.1],
            [0.3, -0.9],
            [-0.8, -0.4],
            [0.6, 1.1],
            [-0.6, -0.7],
        ]))
        .unwrap()
        .centered()
        .unwrap()
    }

    #[test]
    fn pilot_alpha_hits_target_delta() {
        let m0 = pilot();
        let alpha = pilot_alpha_for_delta(&m0, 1.0, 2.0).unwrap();
        let gs = gram_schmidt(&m0, &Permutation::identity(2)).unwrap();
        let d = delta(&gs, &gs.to_gs_coefficients(&alpha), 0).unwrap();
        assert!((d - 2.0).abs() < 1e-12, "Δ = {d}");
    }

    #[test]
    fn opposite_signs_are_refused() {
        let m0 = pilot();
        let alpha = pilot_alpha_for_delta(&m0, 1.0, -1.5).unwrap();
        let r = stacked_power_experiment(&m0, &alpha, 1.0, &[1], 0.05, 10, 1);
        assert!(matches!(r, Err(Error::SameSignViolation { .. })));
    }

    #[test]
    fn analytic_gap_closes_as_k_grows() {
        // Equal noncentralities; only the degrees of freedom differ.
        let m0 = pilot();
        let alpha = pilot_alpha_for_delta(&m0, 1.0, 2.0).unwrap();
        let rows = stacked_power_experiment(&m0, &alpha, 3.0, &[1, 16], 0.05, 20, 4).unwrap();
        for r in &rows {
            assert_eq!(r.n_a, 4 * r.n_b);
        }
        let gap = |r: &StackedRow| (r.analytic_a - r.analytic_b).abs();
        assert!(gap(&rows[1]) < gap(&rows[0]));
        assert!(gap(&rows[1]) < 0.01, "{:?}", rows[1]);
    }
}
