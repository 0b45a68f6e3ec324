//! Gram–Schmidt regression toolkit.
//!
//! Orthogonalizing correlated predictors in a chosen order gives a
//! regression whose coefficient tests have exact `t_{n−p}` distributions and
//! can be far more powerful than the naive multiple-regression tests. This
//! crate provides the decomposition, the naive, GS and ridge fitters, the Δ
//! ratio that predicts which test wins, and the power machinery to check it.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod data;
pub mod diagnostics;
pub mod distributions;
pub mod error;
pub mod linalg;
pub mod power;
pub mod regression;

pub use error::{Error, Result};
