use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::distributions::{t_cdf, t_sf};
use crate::error::{Error, Result};
use crate::linalg::{dot, GsDecomposition, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Multiple regression on the original columns (model A).
    Naive,
    /// Regression on the Gram–Schmidt basis (model B).
    Gs,
    Ridge,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Naive => "naive",
            ModelKind::Gs => "gs",
            ModelKind::Ridge => "ridge",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Direction of the alternative hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alternative {
    #[default]
    Greater,
    Less,
    TwoSided,
}

impl FromStr for Alternative {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greater" => Ok(Alternative::Greater),
            "less" => Ok(Alternative::Less),
            "two-sided" => Ok(Alternative::TwoSided),
            other => Err(Error::InvalidScenario(format!(
                "unknown alternative {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alternative::Greater => "greater",
            Alternative::Less => "less",
            Alternative::TwoSided => "two-sided",
        })
    }
}

/// Coefficient estimates and exact t-tests from any of the fitters.
///
/// For `Gs` fits every per-coefficient vector is in orthogonalization
/// order; `names` gives the column at each position.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub model: ModelKind,
    pub names: Vec<String>,
    pub coef: Vec<f64>,
    pub se: Vec<f64>,
    pub t_stat: Vec<f64>,
    /// `P(T > t)` under `t_{n−p}`.
    pub p_one_sided: Vec<f64>,
    pub p_two_sided: Vec<f64>,
    pub sse: f64,
    pub df_resid: usize,
    pub sigma_hat2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ridge_k: Option<f64>,
    #[serde(skip)]
    pub decomposition: Option<GsDecomposition>,
}

impl FitResult {
    pub(crate) fn new(
        model: ModelKind,
        names: Vec<String>,
        coef: Vec<f64>,
        se: Vec<f64>,
        sse: f64,
        df_resid: usize,
    ) -> Self {
        let df = df_resid as f64;
        let t_stat: Vec<f64> = coef.iter().zip(&se).map(|(&c, &s)| t_ratio(c, s)).collect();
        let p_one_sided: Vec<f64> = t_stat
            .iter()
            .map(|&t| t_sf(t, df).expect("df >= 1"))
            .collect();
        let p_two_sided = p_one_sided.iter().map(|&p| two_sided(p)).collect();
        Self {
            model,
            names,
            coef,
            se,
            t_stat,
            p_one_sided,
            p_two_sided,
            sse,
            df_resid,
            sigma_hat2: sse / df,
            ridge_k: None,
            decomposition: None,
        }
    }

    pub fn p(&self) -> usize {
        self.coef.len()
    }

    /// Residual standard deviation `s`.
    pub fn sigma_hat(&self) -> f64 {
        self.sigma_hat2.sqrt()
    }

    pub fn p_values(&self, alt: Alternative) -> Vec<f64> {
        (0..self.p()).map(|i| self.p_value(i, alt)).collect()
    }

    pub fn p_value(&self, i: usize, alt: Alternative) -> f64 {
        match alt {
            Alternative::Greater => self.p_one_sided[i],
            Alternative::Less => t_cdf(self.t_stat[i], self.df_resid as f64).expect("df >= 1"),
            Alternative::TwoSided => self.p_two_sided[i],
        }
    }

    pub fn rejects(&self, i: usize, level: f64, alt: Alternative) -> bool {
        self.p_value(i, alt) < level
    }

    /// Naive-parameterization coefficients `α̂ = Q⁻¹β̂` of a `Gs` fit, in
    /// orthogonalization order.
    pub fn alpha_hat(&self) -> Option<Vec<f64>> {
        self.decomposition
            .as_ref()
            .map(|d| d.to_naive_coefficients(&self.coef))
    }

    /// `Q` of a `Gs` fit.
    pub fn q(&self) -> Option<&Matrix> {
        self.decomposition.as_ref().map(|d| d.q())
    }

    /// Position of a named coefficient.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn t_ratio(coef: f64, se: f64) -> f64 {
    if se > 0.0 {
        coef / se
    } else if coef == 0.0 {
        f64::NAN
    } else {
        coef.signum() * f64::INFINITY
    }
}

fn two_sided(p_one: f64) -> f64 {
    (2.0 * p_one.min(1.0 - p_one)).min(1.0)
}

/// Least squares on an orthonormal basis: `β̂ = Xᵀy` and the residual sum
/// of squares, computed from the explicit residual vector.
pub(crate) fn project_onto_basis(x: &Matrix, y: &[f64]) -> (Vec<f64>, f64) {
    let beta = x.tr_matvec(y);
    let fitted = x.matvec(&beta);
    let resid: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    (beta, dot(&resid, &resid))
}

pub(crate) fn check_response(n: usize, y: &[f64]) -> Result<()> {
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "response has {} values, design has {n} rows",
            y.len()
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidDesign(
            "response has non-finite values".into(),
        ));
    }
    Ok(())
}
