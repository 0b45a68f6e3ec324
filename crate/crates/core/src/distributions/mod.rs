//! Normal, central and noncentral Student-t laws, plus the seeded sampler.

mod noncentral_t;
mod normal;
mod rng;
pub mod special;
mod student_t;

pub use noncentral_t::{noncentral_t_cdf, noncentral_t_sf};
pub use normal::{normal_cdf, normal_pdf, normal_quantile};
pub use rng::{sample_normal, Rng};
pub use student_t::{t_cdf, t_pdf, t_quantile, t_sf};
