//! Fitters behind a common trait, looked up by name at runtime.

use std::sync::Arc;

use super::fit::{FitResult, ModelKind};
use super::gs::gs_fit;
use super::ols::ols_fit;
use super::ridge::{ridge_fit, HoerlKennardBaldwin, RidgeKRule};
use crate::error::{Error, Result};
use crate::linalg::{DesignMatrix, Permutation};

pub trait Fitter: Send + Sync {
    fn name(&self) -> &str;
    fn kind(&self) -> ModelKind;
    fn fit(&self, m: &DesignMatrix, y: &[f64]) -> Result<FitResult>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NaiveFitter;

impl Fitter for NaiveFitter {
    fn name(&self) -> &str {
        "naive"
    }

    fn kind(&self) -> ModelKind {
        ModelKind::Naive
    }

    fn fit(&self, m: &DesignMatrix, y: &[f64]) -> Result<FitResult> {
        ols_fit(m, y)
    }
}

/// Gram–Schmidt fitter; without an explicit order the design's own column
/// order is used.
#[derive(Debug, Default, Clone)]
pub struct GsFitter {
    pub order: Option<Permutation>,
}

impl Fitter for GsFitter {
    fn name(&self) -> &str {
        "gs"
    }

    fn kind(&self) -> ModelKind {
        ModelKind::Gs
    }

    fn fit(&self, m: &DesignMatrix, y: &[f64]) -> Result<FitResult> {
        match &self.order {
            Some(order) => gs_fit(m, y, order),
            None => gs_fit(m, y, &Permutation::identity(m.p())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RidgeFitter {
    pub rule: Arc<dyn RidgeKRule>,
}

impl Default for RidgeFitter {
    fn default() -> Self {
        Self {
            rule: Arc::new(HoerlKennardBaldwin),
        }
    }
}

impl Fitter for RidgeFitter {
    fn name(&self) -> &str {
        "ridge"
    }

    fn kind(&self) -> ModelKind {
        ModelKind::Ridge
    }

    fn fit(&self, m: &DesignMatrix, y: &[f64]) -> Result<FitResult> {
        ridge_fit(m, y, self.rule.as_ref())
    }
}

/// Named fitters in registration order.
#[derive(Clone, Default)]
pub struct FitterRegistry {
    entries: Vec<(String, Arc<dyn Fitter>)>,
}

impl FitterRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `naive`, `gs` (design order) and `ridge` (HKB `k`).
    pub fn with_defaults() -> Self {
        Self::new()
            .register("naive", Arc::new(NaiveFitter))
            .register("gs", Arc::new(GsFitter::default()))
            .register("ridge", Arc::new(RidgeFitter::default()))
    }

    /// Adds a fitter, replacing any previous entry with the same name.
    pub fn register(mut self, name: &str, fitter: Arc<dyn Fitter>) -> Self {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = fitter,
            None => self.entries.push((name.to_string(), fitter)),
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Fitter>> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| Arc::clone(f))
            .ok_or_else(|| {
                Error::UnknownModel(format!("{name:?} (known: {})", self.names().join(", ")))
            })
    }

    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Arc<dyn Fitter>>> {
        names.iter().map(|n| self.get(n.as_ref())).collect()
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }
}
