//! Power analysis for the first-coefficient test: closed-form noncentral-t
//! power, the Monte Carlo engine over the correlated-predictor generator, and
//! the stacked-design sample-size experiment.

mod analytic;
mod scenario;
mod simulate;
mod stacked;

pub use analytic::{analytic_power, conditional_analytic_power, AnalyticModel, AnalyticSummary};
pub use scenario::{
    default_inv_sigma_grid, generate_replicate, generate_scenario, NullMode, PowerScenario,
    Replicate,
};
pub use simulate::{
    fixed_design_power, simulate_power, simulate_power_grid, simulate_power_with_workers,
    tidy_rows, worker_count, ModelPower, PowerResult, PowerRow, WORKERS_ENV,
};
pub use stacked::{pilot_alpha_for_delta, random_pilot, stacked_power_experiment, StackedRow};
