use std::f64::consts::PI;

use super::normal::normal_quantile;
use super::special::{ln_beta, reg_inc_beta};
use crate::error::{Error, Result};

pub(crate) fn check_df(df: f64) -> Result<()> {
    if df >= 1.0 && df.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDf(df))
    }
}

/// Lower-tail mass `P(T ≤ x)` for `x ≤ 0`: ½·I_{ν/(ν+x²)}(ν/2, ½).
fn lower_tail(x: f64, df: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    let x2 = x * x;
    let denom = df + x2;
    0.5 * reg_inc_beta(0.5 * df, 0.5, df / denom, x2 / denom)
}

/// CDF of the central Student-t distribution with `df` degrees of freedom.
pub fn t_cdf(x: f64, df: f64) -> Result<f64> {
    check_df(df)?;
    if x.is_nan() {
        return Ok(f64::NAN);
    }
    Ok(if x <= 0.0 {
        lower_tail(x, df)
    } else {
        1.0 - lower_tail(-x, df)
    })
}

/// Upper tail `P(T > x)`, computed without cancellation for large `x`.
pub fn t_sf(x: f64, df: f64) -> Result<f64> {
    check_df(df)?;
    if x.is_nan() {
        return Ok(f64::NAN);
    }
    Ok(if x >= 0.0 {
        lower_tail(-x, df)
    } else {
        1.0 - lower_tail(x, df)
    })
}

pub fn t_pdf(x: f64, df: f64) -> f64 {
    let ln_norm = -0.5 * df.ln() - ln_beta(0.5 * df, 0.5);
    (ln_norm - 0.5 * (df + 1.0) * (x * x / df).ln_1p()).exp()
}

/// Quantile of the central Student-t distribution.
pub fn t_quantile(p: f64, df: f64) -> Result<f64> {
    check_df(df)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        return Ok(-lower_quantile(1.0 - p, df));
    }
    Ok(lower_quantile(p, df))
}

/// Quantile for `p < 0.5`; the result is negative.
fn lower_quantile(p: f64, df: f64) -> f64 {
    if df == 1.0 {
        return -1.0 / (PI * p).tan();
    }
    if df == 2.0 {
        return (2.0 * p - 1.0) / (2.0 * p * (1.0 - p)).sqrt();
    }

    // Cornish–Fisher start, then safeguarded Newton on the lower tail.
    let z = normal_quantile(p);
    let g1 = (z.powi(3) + z) / 4.0;
    let g2 = (5.0 * z.powi(5) + 16.0 * z.powi(3) + 3.0 * z) / 96.0;
    let mut x = (z + g1 / df + g2 / (df * df)).min(-f64::MIN_POSITIVE);

    let mut hi = 0.0;
    let mut lo = x.min(-1.0);
    while lower_tail(lo, df) > p {
        hi = lo;
        lo *= 2.0;
    }
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }

    for _ in 0..200 {
        let f = lower_tail(x, df) - p;
        if f == 0.0 {
            break;
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = f / t_pdf(x, df);
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
            x = next;
            break;
        }
        x = next;
    }
    x
}
