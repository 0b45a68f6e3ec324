use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::scenario::{generate_replicate, PowerScenario};
use crate::diagnostics::{delta, delta_from_alpha, vif_column};
use crate::distributions::{sample_normal, Rng};
use crate::error::{Error, Result};
use crate::linalg::{DesignMatrix, Permutation};
use crate::regression::{gs_fit, Alternative, Fitter, FitterRegistry, ModelKind};

/// Environment variable selecting the number of simulation workers
/// (`0` or unset: one per core).
pub const WORKERS_ENV: &str = "GSREG_WORKERS";

/// Replicates that may fail before a run is abandoned, as a fraction.
const MAX_FAILURE_RATE: f64 = 0.01;

#[derive(Debug, Clone, Serialize)]
pub struct ModelPower {
    pub model: String,
    pub rejections: usize,
    pub trials: usize,
    pub empirical_power: f64,
    /// `√(p̂(1 − p̂)/N)`.
    pub mc_se: f64,
    /// True when the reference distribution is only approximate (ridge).
    pub approximate_reference: bool,
}

impl ModelPower {
    fn new(model: &str, kind: ModelKind, rejections: usize, trials: usize) -> Self {
        let p = rejections as f64 / trials as f64;
        Self {
            model: model.to_string(),
            rejections,
            trials,
            empirical_power: p,
            mc_se: (p * (1.0 - p) / trials as f64).sqrt(),
            approximate_reference: kind == ModelKind::Ridge,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerResult {
    pub scenario: PowerScenario,
    pub per_model: Vec<ModelPower>,
    /// Replicates discarded after a fitter error.
    pub failures: usize,
    /// Mean `Δ₁` from the true coefficients of each replicate's design.
    pub mean_delta: f64,
    /// Mean and median of the estimated `Δ̂₁`. Both are noisy: `Δ̂₁` is a
    /// ratio with the estimated naive coefficient in its denominator.
    pub mean_delta_hat: f64,
    pub median_delta_hat: f64,
    /// Mean VIF of `M₁`.
    pub mean_vif: f64,
}

impl PowerResult {
    pub fn model(&self, name: &str) -> Option<&ModelPower> {
        self.per_model.iter().find(|m| m.model == name)
    }
}

/// Worker count from [`WORKERS_ENV`]; `0` means one per core.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

pub(super) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(e) => {
            log::warn!("could not build a {workers}-thread pool ({e}); using the global pool");
            f()
        }
    }
}

struct Outcome {
    rejected: Vec<bool>,
    delta: Option<f64>,
    delta_hat: Option<f64>,
    vif: f64,
}

/// Empirical power of the one-sided (`> 0`) test on the first coefficient,
/// with workers from [`WORKERS_ENV`].
pub fn simulate_power(scenario: &PowerScenario) -> Result<PowerResult> {
    simulate_power_with_workers(scenario, worker_count())
}

/// As [`simulate_power`] with an explicit worker count. The result does not
/// depend on `workers`: replicate `j` always draws from stream `j`, and
/// outcomes are reduced in replicate order.
pub fn simulate_power_with_workers(
    scenario: &PowerScenario,
    workers: usize,
) -> Result<PowerResult> {
    scenario.validate()?;
    let fitters = FitterRegistry::with_defaults().select(&scenario.models)?;

    let outcomes: Vec<Result<Outcome>> = with_pool(workers, || {
        (0..scenario.replicates)
            .into_par_iter()
            .map(|j| run_replicate(scenario, &fitters, j as u64))
            .collect()
    });

    let total = outcomes.len();
    let mut rejections = vec![0usize; fitters.len()];
    let mut ok = 0usize;
    let (mut deltas, mut deltas_hat, mut vifs) = (Vec::new(), Vec::new(), Vec::new());
    for (j, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(o) => {
                ok += 1;
                for (r, &hit) in rejections.iter_mut().zip(&o.rejected) {
                    *r += hit as usize;
                }
                deltas.extend(o.delta);
                deltas_hat.extend(o.delta_hat);
                vifs.push(o.vif);
            }
            Err(e) => log::warn!("replicate {j} discarded: {e}"),
        }
    }
    let failures = total - ok;
    if failures as f64 > MAX_FAILURE_RATE * total as f64 {
        return Err(Error::TooManyFailures {
            failed: failures,
            total,
        });
    }

    let per_model = fitters
        .iter()
        .zip(&scenario.models)
        .zip(&rejections)
        .map(|((f, name), &r)| ModelPower::new(name, f.kind(), r, ok))
        .collect();
    Ok(PowerResult {
        scenario: scenario.clone(),
        per_model,
        failures,
        mean_delta: mean(&deltas),
        mean_delta_hat: mean(&deltas_hat),
        median_delta_hat: median(deltas_hat),
        mean_vif: mean(&vifs),
    })
}

fn run_replicate(s: &PowerScenario, fitters: &[Arc<dyn Fitter>], j: u64) -> Result<Outcome> {
    let mut rng = Rng::new(s.seed, j);
    let r = generate_replicate(s.rho, s.sigma, s.p, s.n, s.null_mode, &mut rng)?;
    let rejected = fitters
        .iter()
        .map(|f| {
            Ok(f.fit(&r.design, &r.y)?
                .rejects(0, s.level, Alternative::Greater))
        })
        .collect::<Result<Vec<_>>>()?;

    let fit = gs_fit(&r.design, &r.y, &Permutation::identity(s.p))?;
    let gs = fit
        .decomposition
        .as_ref()
        .expect("gs fits carry their decomposition");
    let delta_true = delta_from_alpha(gs, &r.alpha, 0).ok();
    let delta_hat = delta(gs, &fit.coef, 0).ok();
    Ok(Outcome {
        rejected,
        delta: delta_true,
        delta_hat,
        vif: vif_column(&r.design, 0)?,
    })
}

fn mean(v: &[f64]) -> f64 {
    let v: Vec<f64> = v.iter().copied().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.iter().sum::<f64>() / v.len() as f64
}

fn median(v: Vec<f64>) -> f64 {
    let mut v: Vec<f64> = v.into_iter().filter(|x| !x.is_nan()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// One [`simulate_power`] run per `1/σ` value. Every grid point reuses the
/// same replicate streams, so the curves share random numbers.
pub fn simulate_power_grid(base: &PowerScenario, inv_sigma: &[f64]) -> Result<Vec<PowerResult>> {
    inv_sigma
        .iter()
        .map(|&s| {
            if !(s > 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "1/sigma must be positive, got {s}"
                )));
            }
            simulate_power(&PowerScenario {
                sigma: 1.0 / s,
                ..base.clone()
            })
        })
        .collect()
}

/// Long-format plot data: one row per scenario × model × grid point.
#[derive(Debug, Clone, Serialize)]
pub struct PowerRow {
    pub scenario: String,
    pub model: String,
    pub inv_sigma: f64,
    pub power: f64,
    pub mc_se: f64,
    pub mean_delta: f64,
    pub vif: f64,
}

pub fn tidy_rows(results: &[PowerResult]) -> Vec<PowerRow> {
    results
        .iter()
        .flat_map(|r| {
            r.per_model.iter().map(move |m| PowerRow {
                scenario: r.scenario.label(),
                model: m.model.clone(),
                inv_sigma: 1.0 / r.scenario.sigma,
                power: m.empirical_power,
                mc_se: m.mc_se,
                mean_delta: r.mean_delta,
                vif: r.mean_vif,
            })
        })
        .collect()
}

/// Empirical one-sided power for the first coefficient on a fixed design,
/// with `y = Mα + σε` and no centering of `y`.
///
/// Replicate `j` draws `ε` from stream `stream_base + j` of `seed`.
#[allow(clippy::too_many_arguments)]
pub fn fixed_design_power(
    m: &DesignMatrix,
    alpha: &[f64],
    sigma: f64,
    level: f64,
    replicates: usize,
    seed: u64,
    stream_base: u64,
    fitter: &dyn Fitter,
) -> Result<ModelPower> {
    if alpha.len() != m.p() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for p = {}",
            alpha.len(),
            m.p()
        )));
    }
    if !(sigma > 0.0) || replicates == 0 || !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidScenario(format!(
            "need sigma > 0, replicates >= 1 and level in (0, 1); got {sigma}, {replicates}, {level}"
        )));
    }
    let mean_y = m.values().matvec(alpha);
    let outcomes: Vec<Result<bool>> = with_pool(worker_count(), || {
        (0..replicates as u64)
            .into_par_iter()
            .map(|j| {
                let mut rng = Rng::new(seed, stream_base + j);
                let y: Vec<f64> = sample_normal(&mut rng, m.n())
                    .iter()
                    .zip(&mean_y)
                    .map(|(e, mu)| mu + sigma * e)
                    .collect();
                Ok(fitter.fit(m, &y)?.rejects(0, level, Alternative::Greater))
            })
            .collect()
    });
    let mut hits = 0;
    let mut ok = 0;
    for (j, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(h) => {
                ok += 1;
                hits += h as usize;
            }
            Err(e) => log::warn!("replicate {j} discarded: {e}"),
        }
    }
    let failed = replicates - ok;
    if failed as f64 > MAX_FAILURE_RATE * replicates as f64 {
        return Err(Error::TooManyFailures {
            failed,
            total: replicates,
        });
    }
    Ok(ModelPower::new(fitter.name(), fitter.kind(), hits, ok))
}
