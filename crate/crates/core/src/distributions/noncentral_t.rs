//! Noncentral Student-t tail probabilities.
//!
//! For `t ≥ 0` the CDF is the Poisson-weighted incomplete-beta series
//!
//! ```text
//! F(t; ν, δ) = Φ(−δ) + ½ Σ_j [ p_j I_x(j + ½, ν/2) + q_j I_x(j + 1, ν/2) ]
//! p_j = e^{−λ} λ^j / j!,   q_j = δ e^{−λ} λ^j / (√2 Γ(j + 3/2)),
//! λ = δ²/2,   x = t² / (t² + ν)
//! ```
//!
//! The sum starts at the Poisson mode and runs outward in both directions,
//! with the incomplete-beta values advanced by their two-term recurrences.

use std::f64::consts::SQRT_2;

use super::normal::normal_cdf;
use super::special::{ln_gamma, reg_inc_beta};
use super::student_t::{check_df, t_sf};
use crate::error::Result;

const TERM_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 2000;

/// `P(T' > x)` for a noncentral t variate with `df` degrees of freedom and
/// noncentrality `ncp`.
pub fn noncentral_t_sf(x: f64, df: f64, ncp: f64) -> Result<f64> {
    check_df(df)?;
    if x.is_nan() || ncp.is_nan() {
        return Ok(f64::NAN);
    }
    if ncp == 0.0 {
        return t_sf(x, df);
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    if x == f64::NEG_INFINITY {
        return Ok(1.0);
    }
    let sf = if x >= 0.0 {
        1.0 - cdf_nonnegative(x, df, ncp)
    } else {
        // F(x; ν, δ) = 1 − F(−x; ν, −δ)
        cdf_nonnegative(-x, df, -ncp)
    };
    Ok(sf.clamp(0.0, 1.0))
}

/// `P(T' ≤ x)`.
pub fn noncentral_t_cdf(x: f64, df: f64, ncp: f64) -> Result<f64> {
    Ok(1.0 - noncentral_t_sf(x, df, ncp)?)
}

fn cdf_nonnegative(t: f64, df: f64, delta: f64) -> f64 {
    let base = normal_cdf(-delta);
    if t == 0.0 {
        return base;
    }
    let t2 = t * t;
    let x = t2 / (t2 + df);
    let y = df / (t2 + df);
    let b = 0.5 * df;
    let lambda = 0.5 * delta * delta;
    let ln_lambda = lambda.ln();
    let mode = lambda.floor();
    let ln_x = x.ln();
    let ln_y = y.ln();

    // Weights at the mode.
    let p_mode = (-lambda + mode * ln_lambda - ln_gamma(mode + 1.0)).exp();
    let q_mode = delta.signum()
        * (delta.abs().ln() - SQRT_2.ln() - lambda + mode * ln_lambda - ln_gamma(mode + 1.5)).exp();

    // Incomplete betas at the mode, a = mode + ½ and a = mode + 1.
    let ap = mode + 0.5;
    let aq = mode + 1.0;
    let ip_mode = reg_inc_beta(ap, b, x, y);
    let iq_mode = reg_inc_beta(aq, b, x, y);
    // g(a) = x^a y^b / (a B(a, b)), the decrement I_x(a, b) − I_x(a + 1, b).
    let g =
        |a: f64| (a * ln_x + b * ln_y + ln_gamma(a + b) - ln_gamma(a + 1.0) - ln_gamma(b)).exp();
    let gp_mode = g(ap);
    let gq_mode = g(aq);

    let mut sum = 0.0;
    let mut terms = 0usize;

    // Upward from the mode.
    let (mut p, mut q, mut ip, mut iq, mut gp, mut gq) =
        (p_mode, q_mode, ip_mode, iq_mode, gp_mode, gq_mode);
    let mut j = mode;
    loop {
        sum += p * ip + q * iq;
        terms += 1;
        if (p + q.abs() < TERM_TOL && j > lambda) || terms >= MAX_TERMS {
            break;
        }
        ip -= gp;
        iq -= gq;
        let (a_p, a_q) = (j + 0.5, j + 1.0);
        gp *= x * (a_p + b) / (a_p + 1.0);
        gq *= x * (a_q + b) / (a_q + 1.0);
        p *= lambda / (j + 1.0);
        q *= lambda / (j + 1.5);
        j += 1.0;
    }

    // Downward from mode − 1.
    let (mut p, mut q, mut ip, mut iq, mut gp, mut gq) =
        (p_mode, q_mode, ip_mode, iq_mode, gp_mode, gq_mode);
    let mut j = mode;
    while j >= 1.0 && terms < MAX_TERMS {
        let (a_p, a_q) = (j + 0.5, j + 1.0);
        // g(a − 1) = g(a) · a / (x (a + b − 1))
        gp *= a_p / (x * (a_p + b - 1.0));
        gq *= a_q / (x * (a_q + b - 1.0));
        ip += gp;
        iq += gq;
        p *= j / lambda;
        q *= (j + 0.5) / lambda;
        j -= 1.0;
        sum += p * ip + q * iq;
        terms += 1;
        if p + q.abs() < TERM_TOL {
            break;
        }
    }

    base + 0.5 * sum
}
