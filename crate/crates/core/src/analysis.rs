//! Data-set level Gram–Schmidt analysis: coefficient table plus Δ̂, VIF and
//! condition-number diagnostics.

use serde::Serialize;

use crate::data::Dataset;
use crate::diagnostics::{
    condition_number, delta_or_limit, standardized_condition_number, vif, CollinearityLevel,
};
use crate::error::{Error, Result};
use crate::linalg::{center_vector, DesignMatrix, Permutation};
use crate::regression::{gs_fit, Alternative, FitResult};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Preprocessing {
    pub center: bool,
    pub scale: bool,
}

impl Default for Preprocessing {
    /// Center only. GS estimates and tests do not change when columns are
    /// rescaled, so scaling is optional.
    fn default() -> Self {
        Self {
            center: true,
            scale: false,
        }
    }
}

/// Design and response after optional centering (both) and scaling
/// (predictors only).
pub fn prepare(d: &Dataset, pre: Preprocessing) -> Result<(DesignMatrix, Vec<f64>)> {
    let mut m = d.design()?;
    let mut y = d.response.clone();
    if pre.center {
        m = m.centered()?;
        y = center_vector(&y);
    }
    if pre.scale {
        m = m.scaled()?;
    }
    Ok((m, y))
}

/// Resolves an order given as column names; `None` keeps file order.
pub fn resolve_order<S: AsRef<str>>(m: &DesignMatrix, order: Option<&[S]>) -> Result<Permutation> {
    match order {
        Some(names) => Permutation::from_names(names, m.col_names()),
        None => Ok(Permutation::identity(m.p())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GsRow {
    pub position: usize,
    pub variable: String,
    pub estimate: f64,
    pub std_error: f64,
    pub t_stat: f64,
    /// p-value for the requested alternative.
    pub p_value: f64,
    pub p_two_sided: f64,
    pub delta_hat: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_note: Option<String>,
    /// Needs a centered design; absent otherwise.
    pub vif: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GsReport {
    pub n: usize,
    pub p: usize,
    pub df_resid: usize,
    pub sigma_hat: f64,
    pub alternative: Alternative,
    pub preprocessing: Preprocessing,
    pub rows: Vec<GsRow>,
    /// CN of the design as fitted.
    pub condition_number: f64,
    /// CN of the centered, unit-variance predictors; `collinearity` is
    /// classified from this one.
    pub condition_number_standardized: f64,
    pub collinearity: CollinearityLevel,
    #[serde(skip)]
    pub fit: FitResult,
}

/// Preprocesses, fits GS in `order` and attaches per-variable diagnostics.
pub fn run_gs_analysis<S: AsRef<str>>(
    d: &Dataset,
    order: Option<&[S]>,
    pre: Preprocessing,
    alternative: Alternative,
) -> Result<GsReport> {
    let (m, y) = prepare(d, pre)?;
    let order = resolve_order(&m, order)?;
    let fit = gs_fit(&m, &y, &order)?;
    let gs = fit
        .decomposition
        .as_ref()
        .ok_or_else(|| Error::InvalidScenario("gs fit lost its decomposition".into()))?;
    let vifs = if m.is_centered() {
        Some(vif(&m)?)
    } else {
        None
    };
    let cn = condition_number(&m)?;
    let cn_std = standardized_condition_number(&d.design()?)?;
    let p_alt = fit.p_values(alternative);

    let rows = (0..fit.p())
        .map(|i| {
            let (delta_hat, delta_note) = delta_or_limit(gs, &fit.coef, i)?;
            Ok(GsRow {
                position: i + 1,
                variable: fit.names[i].clone(),
                estimate: fit.coef[i],
                std_error: fit.se[i],
                t_stat: fit.t_stat[i],
                p_value: p_alt[i],
                p_two_sided: fit.p_two_sided[i],
                delta_hat,
                delta_note,
                vif: vifs.as_ref().map(|v| v[order.as_slice()[i]]),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(GsReport {
        n: m.n(),
        p: m.p(),
        df_resid: fit.df_resid,
        sigma_hat: fit.sigma_hat(),
        alternative,
        preprocessing: pre,
        rows,
        condition_number: cn,
        condition_number_standardized: cn_std,
        collinearity: CollinearityLevel::from_condition_number(cn_std),
        fit,
    })
}

impl GsReport {
    pub fn row(&self, variable: &str) -> Option<&GsRow> {
        self.rows.iter().find(|r| r.variable == variable)
    }
}
