use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::scenario::{generate_replicate, PowerScenario};
use super::simulate::{with_pool, worker_count};
use crate::distributions::{noncentral_t_sf, t_quantile, Rng};
use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, Permutation};

/// Model A is the naive regression on `M`, model B the GS regression on `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnalyticModel {
    A,
    B,
}

impl FromStr for AnalyticModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" | "naive" => Ok(AnalyticModel::A),
            "B" | "b" | "gs" => Ok(AnalyticModel::B),
            _ => Err(Error::InvalidScenario(format!(
                "analytic model must be A (naive) or B (gs), got {s:?}"
            ))),
        }
    }
}

/// Power of the one-sided level-`level` t-test on one coefficient.
///
/// Model B has a unit-norm regressor, so the noncentrality is `β_i/σ`;
/// model A has `α_i/(σ‖q_i‖)`. `effect` is `β_i` or `α_i` accordingly and
/// `q_norm` is ignored for model B.
pub fn analytic_power(
    model: AnalyticModel,
    effect: f64,
    sigma: f64,
    q_norm: f64,
    n: usize,
    p: usize,
    level: f64,
) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidScenario(format!(
            "sigma must be positive and finite, got {sigma}"
        )));
    }
    if n <= p {
        return Err(Error::InvalidScenario(format!(
            "n = {n} must exceed p = {p}"
        )));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidScenario(format!(
            "level must lie in (0, 1), got {level}"
        )));
    }
    if !effect.is_finite() {
        return Err(Error::InvalidScenario(format!(
            "effect must be finite, got {effect}"
        )));
    }
    let ncp = match model {
        AnalyticModel::B => effect / sigma,
        AnalyticModel::A => {
            if !(q_norm > 0.0) || !q_norm.is_finite() {
                return Err(Error::InvalidScenario(format!(
                    "‖q_i‖ must be positive, got {q_norm}"
                )));
            }
            effect / (sigma * q_norm)
        }
    };
    let df = (n - p) as f64;
    noncentral_t_sf(t_quantile(1.0 - level, df)?, df, ncp)
}

/// Mean analytic power across the scenario's replicate designs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AnalyticSummary {
    pub naive: f64,
    pub gs: f64,
}

/// Analytic power of models A and B for the first coefficient, conditional
/// on each replicate's design and averaged over the replicates.
///
/// Uses the same streams as [`super::simulate_power`], so the designs are the
/// ones the empirical rejections were computed on; their average is the
/// exact expected rejection rate.
pub fn conditional_analytic_power(scenario: &PowerScenario) -> Result<AnalyticSummary> {
    scenario.validate()?;
    let s = scenario;
    let per_rep: Vec<Result<(f64, f64)>> = with_pool(worker_count(), || {
        (0..s.replicates as u64)
            .into_par_iter()
            .map(|j| {
                let r = generate_replicate(
                    s.rho,
                    s.sigma,
                    s.p,
                    s.n,
                    s.null_mode,
                    &mut Rng::new(s.seed, j),
                )?;
                let gs = gram_schmidt(&r.design, &Permutation::identity(s.p))?;
                let beta = gs.to_gs_coefficients(&r.alpha);
                let a = analytic_power(
                    AnalyticModel::A,
                    r.alpha[0],
                    s.sigma,
                    gs.q_row_norm(0),
                    s.n,
                    s.p,
                    s.level,
                )?;
                let b = analytic_power(AnalyticModel::B, beta[0], s.sigma, 1.0, s.n, s.p, s.level)?;
                Ok((a, b))
            })
            .collect()
    });
    let mut sum = (0.0, 0.0);
    let mut count = 0usize;
    for r in per_rep.into_iter().flatten() {
        sum.0 += r.0;
        sum.1 += r.1;
        count += 1;
    }
    if count == 0 {
        return Err(Error::TooManyFailures {
            failed: s.replicates,
            total: s.replicates,
        });
    }
    Ok(AnalyticSummary {
        naive: sum.0 / count as f64,
        gs: sum.1 / count as f64,
    })
}
