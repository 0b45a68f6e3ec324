use std::fs::File;

use gsreg::analysis::{prepare, resolve_order, run_gs_analysis, Preprocessing};
use gsreg::data::{fixture, ingest_csv, ingest_reader, verify_fixture, Dataset, FIXTURE_CSV};
use gsreg::diagnostics::{
    delta_report, equivalent_sample_size, estimated_delta_report, standardized_condition_number,
    CollinearityLevel, DeltaBasis,
};
use gsreg::power::{
    analytic_power, default_inv_sigma_grid, pilot_alpha_for_delta, random_pilot,
    simulate_power_grid, stacked_power_experiment, tidy_rows, AnalyticModel, NullMode,
    PowerScenario,
};
use gsreg::regression::{ols_fit, ridge_fit, FitResult, RidgeK};
use gsreg::{Error, Result};
use serde_json::json;

use crate::output::{format_num, format_p, Report, Table};
use crate::{Command, DataArgs, OutputArgs};

pub fn run(cmd: Command) -> Result<()> {
    let (report, output) = match cmd {
        Command::Fit { data, output } => (fit(&data, &output)?, output),
        Command::Gs {
            data,
            output,
            order,
        } => (gs(&data, &output, order.as_deref())?, output),
        Command::Ridge { data, output, k } => (ridge(&data, &output, k)?, output),
        Command::Diag {
            data,
            output,
            order,
            alpha,
        } => (diag(&data, order.as_deref(), alpha.as_deref())?, output),
        Command::Power {
            output,
            rho,
            sigma_grid,
            p,
            n,
            reps,
            seed,
            models,
            level,
            null,
            plot_data,
        } => {
            let grid = match sigma_grid {
                Some(s) => s.iter().map(|v| 1.0 / v).collect(),
                None => default_inv_sigma_grid(),
            };
            let base = PowerSpec {
                n,
                reps,
                seed,
                models,
                level,
                null,
            };
            let report = power(&rho, &p, &grid, &base, &plot_data)?;
            (report, output)
        }
        Command::PowerAnalytic {
            output,
            model,
            effect,
            sigma,
            q_norm,
            n,
            p,
            level,
        } => {
            let model: AnalyticModel = model.parse()?;
            (
                power_analytic(model, effect, &sigma, q_norm, n, p, level)?,
                output,
            )
        }
        Command::Samplesize { output, delta, n_b } => (samplesize(delta, n_b)?, output),
        Command::StackedCheck {
            output,
            delta,
            n0,
            rho,
            alpha1,
            sigma,
            k_grid,
            reps,
            seed,
            level,
        } => {
            let m0 = random_pilot(n0, rho, seed)?;
            let alpha = pilot_alpha_for_delta(&m0, alpha1, delta)?;
            let rows = stacked_power_experiment(&m0, &alpha, sigma, &k_grid, level, reps, seed)?;
            let mut t = Table::new([
                "k",
                "n_a",
                "n_b",
                "delta",
                "power_a",
                "mc_se_a",
                "power_b",
                "mc_se_b",
                "gap",
                "combined_se",
                "analytic_a",
                "analytic_b",
            ]);
            for r in &rows {
                t.push(vec![
                    r.k.to_string(),
                    r.n_a.to_string(),
                    r.n_b.to_string(),
                    format_num(r.delta),
                    format_num(r.power_a),
                    format_num(r.mc_se_a),
                    format_num(r.power_b),
                    format_num(r.mc_se_b),
                    format_num(r.gap),
                    format_num(r.combined_se),
                    format_num(r.analytic_a),
                    format_num(r.analytic_b),
                ]);
            }
            let json = json!({ "pilot_alpha": alpha, "rows": rows });
            (
                Report {
                    tables: vec![t],
                    json,
                },
                output,
            )
        }
    };
    report.emit(output.format, output.out.as_deref())?;
    Ok(())
}

fn load(args: &DataArgs) -> Result<(Dataset, Preprocessing)> {
    let d = match &args.data {
        Some(path) => ingest_csv(path, &args.response, args.predictors.as_deref())?,
        None => {
            verify_fixture()?;
            let mut d = ingest_reader(
                FIXTURE_CSV.as_bytes(),
                &args.response,
                args.predictors.as_deref(),
            )?;
            d.provenance = fixture()?.provenance;
            d
        }
    };
    let pre = Preprocessing {
        center: !args.no_center,
        scale: args.scale && !args.no_scale,
    };
    Ok((d, pre))
}

fn coefficient_table(fit: &FitResult, output: &OutputArgs) -> Table {
    let p = fit.p_values(output.alt);
    let mut t = Table::new(["variable", "estimate", "std_error", "t", "p_value"]);
    for i in 0..fit.p() {
        t.push(vec![
            fit.names[i].clone(),
            format_num(fit.coef[i]),
            format_num(fit.se[i]),
            format_num(fit.t_stat[i]),
            format_p(p[i]),
        ]);
    }
    t
}

fn fit_summary(
    fit: &FitResult,
    d: &Dataset,
    pre: Preprocessing,
    output: &OutputArgs,
) -> Vec<(&'static str, String)> {
    vec![
        ("model", fit.model.to_string()),
        ("response", d.response_name.clone()),
        ("n", (fit.df_resid + fit.p()).to_string()),
        ("p", fit.p().to_string()),
        ("df_resid", fit.df_resid.to_string()),
        ("sigma_hat", format_num(fit.sigma_hat())),
        ("alternative", output.alt.to_string()),
        ("center", pre.center.to_string()),
        ("scale", pre.scale.to_string()),
    ]
}

fn fit(args: &DataArgs, output: &OutputArgs) -> Result<Report> {
    let (d, pre) = load(args)?;
    let (m, y) = prepare(&d, pre)?;
    let fit = ols_fit(&m, &y)?;
    let summary = Table::key_value(&fit_summary(&fit, &d, pre, output));
    let json = json!({ "fit": fit, "p_values": fit.p_values(output.alt), "preprocessing": pre });
    Ok(Report {
        tables: vec![coefficient_table(&fit, output), summary],
        json,
    })
}

fn ridge(args: &DataArgs, output: &OutputArgs, k: RidgeK) -> Result<Report> {
    let (d, pre) = load(args)?;
    let (m, y) = prepare(&d, pre)?;
    let rule = k.rule();
    let fit = ridge_fit(&m, &y, rule.as_ref())?;
    let mut summary = fit_summary(&fit, &d, pre, output);
    summary.push(("k", format_num(fit.ridge_k.unwrap_or(f64::NAN))));
    summary.push(("k_rule", rule.name().to_string()));
    summary.push(("reference", "t(n-p), approximate for ridge".to_string()));
    let json = json!({
        "fit": fit,
        "p_values": fit.p_values(output.alt),
        "k_rule": rule.name(),
        "approximate_reference": true,
        "preprocessing": pre,
    });
    Ok(Report {
        tables: vec![coefficient_table(&fit, output), Table::key_value(&summary)],
        json,
    })
}

fn gs(args: &DataArgs, output: &OutputArgs, order: Option<&[String]>) -> Result<Report> {
    let (d, pre) = load(args)?;
    let r = run_gs_analysis(&d, order, pre, output.alt)?;
    let mut t = Table::new([
        "position",
        "variable",
        "estimate",
        "std_error",
        "t",
        "p_value",
        "delta_hat",
        "vif",
    ]);
    for row in &r.rows {
        t.push(vec![
            row.position.to_string(),
            row.variable.clone(),
            format_num(row.estimate),
            format_num(row.std_error),
            format_num(row.t_stat),
            format_p(row.p_value),
            format_num(row.delta_hat),
            row.vif.map_or_else(|| "NA".to_string(), format_num),
        ]);
    }
    let mut summary = fit_summary(&r.fit, &d, pre, output);
    summary.push(("condition_number", format_num(r.condition_number)));
    summary.push((
        "condition_number_standardized",
        format_num(r.condition_number_standardized),
    ));
    summary.push(("collinearity", r.collinearity.describe().to_string()));
    for row in r.rows.iter().filter(|row| row.delta_note.is_some()) {
        summary.push((
            "note",
            format!(
                "{}: {}",
                row.variable,
                row.delta_note.as_deref().unwrap_or_default()
            ),
        ));
    }
    let json = serde_json::to_value(&r).map_err(|e| Error::InvalidScenario(e.to_string()))?;
    Ok(Report {
        tables: vec![t, Table::key_value(&summary)],
        json,
    })
}

fn diag(args: &DataArgs, order: Option<&[String]>, alpha: Option<&[f64]>) -> Result<Report> {
    let (d, pre) = load(args)?;
    let (m, y) = prepare(&d, pre)?;
    let perm = resolve_order(&m, order)?;
    let report = match alpha {
        Some(a) => {
            if a.len() != m.p() {
                return Err(Error::DimensionMismatch(format!(
                    "{} coefficients for p = {}",
                    a.len(),
                    m.p()
                )));
            }
            let gs = gsreg::linalg::gram_schmidt(&m, &perm)?;
            let beta = gs.to_gs_coefficients(&gs.ordered(a));
            delta_report(&m, &perm, &beta, DeltaBasis::TrueBeta)?
        }
        None => estimated_delta_report(&m, &y, &perm)?,
    };
    let mut t = Table::new([
        "position",
        "variable",
        "delta",
        "delta_squared",
        "vif",
        "note",
    ]);
    for v in &report.per_variable {
        t.push(vec![
            v.position.to_string(),
            v.name.clone(),
            format_num(v.delta),
            format_num(v.delta * v.delta),
            format_num(v.vif),
            v.note.clone().unwrap_or_default(),
        ]);
    }
    let cn_std = standardized_condition_number(&m)?;
    let collinearity = CollinearityLevel::from_condition_number(cn_std);
    let summary = Table::key_value(&[
        ("basis", format!("{:?}", report.basis)),
        ("condition_number", format_num(report.condition_number)),
        ("condition_number_standardized", format_num(cn_std)),
        ("collinearity", collinearity.describe().to_string()),
    ]);
    let json = json!({
        "report": report,
        "condition_number_standardized": cn_std,
        "collinearity_standardized": collinearity,
        "preprocessing": pre,
    });
    Ok(Report {
        tables: vec![t, summary],
        json,
    })
}

struct PowerSpec {
    n: usize,
    reps: usize,
    seed: u64,
    models: Vec<String>,
    level: f64,
    null: NullMode,
}

fn power(
    rhos: &[f64],
    ps: &[usize],
    inv_sigma: &[f64],
    spec: &PowerSpec,
    plot: &std::path::Path,
) -> Result<Report> {
    let mut results = Vec::new();
    for &rho in rhos {
        for &p in ps {
            let base = PowerScenario {
                level: spec.level,
                models: spec.models.clone(),
                null_mode: spec.null,
                ..PowerScenario::new(rho, 1.0, p, spec.n, spec.reps, spec.seed)
            };
            results.extend(simulate_power_grid(&base, inv_sigma)?);
        }
    }
    let rows = tidy_rows(&results);

    let mut w = csv::Writer::from_writer(File::create(plot)?);
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;

    let mut t = Table::new([
        "scenario",
        "model",
        "inv_sigma",
        "power",
        "mc_se",
        "mean_delta",
        "mean_delta_hat",
        "median_delta_hat",
        "vif",
        "failures",
        "reference",
    ]);
    for r in &results {
        for m in &r.per_model {
            t.push(vec![
                r.scenario.label(),
                m.model.clone(),
                format_num(1.0 / r.scenario.sigma),
                format_num(m.empirical_power),
                format_num(m.mc_se),
                format_num(r.mean_delta),
                format_num(r.mean_delta_hat),
                format_num(r.median_delta_hat),
                format_num(r.mean_vif),
                r.failures.to_string(),
                if m.approximate_reference {
                    "approximate"
                } else {
                    "exact"
                }
                .to_string(),
            ]);
        }
    }
    Ok(Report {
        tables: vec![t],
        json: json!({ "results": results, "plot_data": plot.display().to_string() }),
    })
}

fn power_analytic(
    model: AnalyticModel,
    effect: f64,
    sigmas: &[f64],
    q_norm: f64,
    n: usize,
    p: usize,
    level: f64,
) -> Result<Report> {
    let mut t = Table::new(["model", "effect", "sigma", "inv_sigma", "power"]);
    let mut values = Vec::new();
    for &s in sigmas {
        let pw = analytic_power(model, effect, s, q_norm, n, p, level)?;
        values.push(json!({ "sigma": s, "power": pw }));
        t.push(vec![
            format!("{model:?}"),
            format_num(effect),
            format_num(s),
            format_num(1.0 / s),
            format_num(pw),
        ]);
    }
    let json = json!({ "model": model, "effect": effect, "q_norm": q_norm, "n": n, "p": p, "level": level, "power": values });
    Ok(Report {
        tables: vec![t],
        json,
    })
}

fn samplesize(delta: f64, n_b: usize) -> Result<Report> {
    let n_a = equivalent_sample_size(delta, n_b)?;
    let t = Table::key_value(&[
        ("delta", format_num(delta)),
        ("n_b", n_b.to_string()),
        ("n_a", format_num(n_a)),
        ("n_a_ceil", (n_a.ceil() as u64).to_string()),
    ]);
    Ok(Report {
        tables: vec![t],
        json: json!({ "delta": delta, "n_b": n_b, "n_a": n_a, "n_a_ceil": n_a.ceil() }),
    })
}
