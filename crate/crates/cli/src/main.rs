use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gsreg::power::NullMode;
use gsreg::regression::{Alternative, RidgeK};

mod commands;
mod output;

use output::Format;

/// Gram–Schmidt, naive and ridge regression with exact coefficient tests,
/// multicollinearity diagnostics and power studies.
#[derive(Parser, Debug)]
#[command(name = "gsreg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct DataArgs {
    /// CSV input with a header row. Defaults to the bundled pollution/mortality fixture.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Response column.
    #[arg(long, default_value = "Mortality")]
    response: String,
    /// Predictor columns (comma-separated). Defaults to every other column.
    #[arg(long, value_delimiter = ',')]
    predictors: Option<Vec<String>>,
    /// Center the response and predictors (default).
    #[arg(long, overrides_with = "no_center")]
    center: bool,
    #[arg(long, overrides_with = "center")]
    no_center: bool,
    /// Scale predictors to unit standard deviation.
    #[arg(long, overrides_with = "no_scale")]
    scale: bool,
    /// Leave predictors unscaled (default).
    #[arg(long, overrides_with = "scale")]
    no_scale: bool,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Alternative hypothesis for coefficient p-values.
    #[arg(long, default_value = "two-sided")]
    alt: Alternative,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Naive multiple regression (OLS).
    Fit {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gram–Schmidt regression with Δ̂, VIF and condition-number diagnostics.
    Gs {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Orthogonalization order as comma-separated column names.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// Ridge regression.
    Ridge {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Ridge constant: `auto` (Hoerl–Kennard–Baldwin) or a value >= 0.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        k: RidgeK,
    },
    /// Per-variable Δ, VIF and power-equivalent sample size, plus the condition number.
    Diag {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Known naive coefficients (file column order) for planning mode.
        /// Without them Δ̂ is estimated from the GS fit.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
    },
    /// Monte Carlo power of the first-coefficient test on simulated correlated predictors.
    Power {
        #[command(flatten)]
        output: OutputArgs,
        /// Predictor correlation parameter(s).
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0.5",
            allow_hyphen_values = true
        )]
        rho: Vec<f64>,
        /// Noise levels σ. Defaults to 1/σ = 1/12, 2/12, …, 1.
        #[arg(long, value_delimiter = ',')]
        sigma_grid: Option<Vec<f64>>,
        /// Predictor count(s).
        #[arg(long, value_delimiter = ',', default_value = "15")]
        p: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "naive,gs,ridge")]
        models: Vec<String>,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
        /// Coefficients zeroed in the generator: off, drop-first or global.
        #[arg(long, default_value = "off")]
        null: NullMode,
        /// Long-format plot-data CSV.
        #[arg(long, default_value = "power-plot.csv")]
        plot_data: PathBuf,
    },
    /// Noncentral-t power of the one-sided test on one coefficient.
    PowerAnalytic {
        #[command(flatten)]
        output: OutputArgs,
        /// A (naive, effect = α_i) or B (Gram–Schmidt, effect = β_i).
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        effect: f64,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        sigma: Vec<f64>,
        /// ‖q_i‖ (model A only).
        #[arg(long, default_value_t = 1.0)]
        q_norm: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
    },
    /// Naive-model sample size matching the power of a GS study: n_A = Δ²·n_B.
    Samplesize {
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long)]
        n_b: usize,
    },
    /// Stacked-design experiment: naive power on Δ²k copies of a pilot vs GS power on k copies.
    StackedCheck {
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 2.0)]
        delta: f64,
        /// Pilot rows.
        #[arg(long, default_value_t = 20)]
        n0: usize,
        /// Pilot predictor correlation parameter.
        #[arg(long, default_value_t = 0.6, allow_hyphen_values = true)]
        rho: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        alpha1: f64,
        #[arg(long, default_value_t = 4.0)]
        sigma: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16")]
        k_grid: Vec<usize>,
        #[arg(long, default_value_t = 4000)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}
