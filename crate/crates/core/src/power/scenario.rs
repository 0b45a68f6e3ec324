use std::str::FromStr;

use serde::Serialize;

use crate::distributions::{sample_normal, Rng};
use crate::error::{Error, Result};
use crate::linalg::{center_vector, DesignMatrix, Matrix};

/// Which true coefficients are zeroed in the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullMode {
    /// All coefficients `1/p`.
    #[default]
    Off,
    /// Coefficient of `M₁` set to zero, the rest `1/p`.
    DropFirst,
    /// Every coefficient zero: `Y = σε`. The first coefficient is then zero
    /// under every parameterization, including GS and ridge.
    Global,
}

impl FromStr for NullMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(NullMode::Off),
            "drop-first" => Ok(NullMode::DropFirst),
            "global" => Ok(NullMode::Global),
            _ => Err(Error::InvalidScenario(format!(
                "null mode must be off, drop-first or global, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerScenario {
    pub rho: f64,
    pub sigma: f64,
    pub p: usize,
    pub n: usize,
    pub replicates: usize,
    pub level: f64,
    pub seed: u64,
    pub models: Vec<String>,
    pub null_mode: NullMode,
}

impl PowerScenario {
    pub fn new(rho: f64, sigma: f64, p: usize, n: usize, replicates: usize, seed: u64) -> Self {
        Self {
            rho,
            sigma,
            p,
            n,
            replicates,
            level: 0.05,
            seed,
            models: vec!["naive".into(), "gs".into(), "ridge".into()],
            null_mode: NullMode::Off,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if !(self.rho > -1.0 && self.rho < 1.0) {
            return bad(format!("rho must lie in (-1, 1), got {}", self.rho));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return bad(format!(
                "sigma must be positive and finite, got {}",
                self.sigma
            ));
        }
        if self.p < 2 {
            return bad(format!("p must be >= 2, got {}", self.p));
        }
        if self.n <= self.p {
            return bad(format!(
                "n = {} leaves no residual degrees of freedom for p = {}",
                self.n, self.p
            ));
        }
        if self.replicates == 0 {
            return bad("replicates must be >= 1".into());
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return bad(format!("level must lie in (0, 1), got {}", self.level));
        }
        if self.models.is_empty() {
            return bad("no models requested".into());
        }
        Ok(())
    }

    /// `rho=…,p=…,n=…` label for tidy output.
    pub fn label(&self) -> String {
        format!("rho={},p={},n={}", self.rho, self.p, self.n)
    }
}

/// One simulated data set.
#[derive(Debug, Clone)]
pub struct Replicate {
    /// Centered and scaled predictors.
    pub design: DesignMatrix,
    /// Centered response.
    pub y: Vec<f64>,
    /// True coefficients on the scaled predictors: `a_j · sd(M_j)`.
    pub alpha: Vec<f64>,
}

/// Draws `M₁ = Z₁`, `M_i = ρZ₁ + Z_i`, `Y = Σ M_i/p + σε`, then centers `Y`
/// and centers and scales the columns of `M`.
pub fn generate_scenario(
    rho: f64,
    sigma: f64,
    p: usize,
    n: usize,
    rng: &mut Rng,
) -> Result<(DesignMatrix, Vec<f64>)> {
    let r = generate_replicate(rho, sigma, p, n, NullMode::Off, rng)?;
    Ok((r.design, r.y))
}

pub fn generate_replicate(
    rho: f64,
    sigma: f64,
    p: usize,
    n: usize,
    null_mode: NullMode,
    rng: &mut Rng,
) -> Result<Replicate> {
    let z: Vec<Vec<f64>> = (0..p).map(|_| sample_normal(rng, n)).collect();
    let eps = sample_normal(rng, n);

    let mut cols = z.clone();
    for c in cols.iter_mut().skip(1) {
        for (v, z1) in c.iter_mut().zip(&z[0]) {
            *v += rho * z1;
        }
    }
    let coef: Vec<f64> = (0..p)
        .map(|j| match null_mode {
            NullMode::Off => 1.0 / p as f64,
            NullMode::DropFirst if j == 0 => 0.0,
            NullMode::DropFirst => 1.0 / p as f64,
            NullMode::Global => 0.0,
        })
        .collect();

    let mut y: Vec<f64> = eps.iter().map(|e| sigma * e).collect();
    for (c, a) in cols.iter().zip(&coef) {
        for (yi, v) in y.iter_mut().zip(c) {
            *yi += a * v;
        }
    }

    let names = (1..=p).map(|j| format!("M{j}")).collect();
    let raw = DesignMatrix::new(Matrix::from_columns(&cols), names)?;
    let design = raw.standardized(true)?;
    let alpha = coef
        .iter()
        .enumerate()
        .map(|(j, a)| a * sample_sd(raw.col(j)))
        .collect();
    Ok(Replicate {
        design,
        y: center_vector(&y),
        alpha,
    })
}

fn sample_sd(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    (v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Twelve equispaced `1/σ` values `1/12, 2/12, …, 1`.
pub fn default_inv_sigma_grid() -> Vec<f64> {
    (1..=12).map(|i| i as f64 / 12.0).collect()
}
