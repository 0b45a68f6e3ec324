//! Naive (multiple), Gram–Schmidt and ridge regression with coefficient
//! t-tests.

mod fit;
mod gs;
mod ols;
mod registry;
mod ridge;

pub use fit::{Alternative, FitResult, ModelKind};
pub use gs::{gs_effect_size, gs_fit, EffectSize};
pub use ols::ols_fit;
pub use registry::{Fitter, FitterRegistry, GsFitter, NaiveFitter, RidgeFitter};
pub use ridge::{ridge_fit, ridge_k_auto, FixedK, HoerlKennardBaldwin, RidgeK, RidgeKRule};
