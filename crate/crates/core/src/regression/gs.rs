use serde::Serialize;

use super::fit::{check_response, project_onto_basis, FitResult, ModelKind};
use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, DesignMatrix, Permutation, RANK_TOL};

/// Gram–Schmidt regression: orthogonalize `M` in the given order and
/// regress `y` on the orthonormal basis.
///
/// Since `XᵀX = I`, `β̂_i = x_iᵀy` and every coefficient shares the standard
/// error `s = √(SSE/(n−p))`. The t statistic is therefore `β̂_i / s`.
pub fn gs_fit(m: &DesignMatrix, y: &[f64], order: &Permutation) -> Result<FitResult> {
    check_response(m.n(), y)?;
    let gs = gram_schmidt(m, order)?;
    let (beta, sse) = project_onto_basis(gs.x(), y);
    let df = m.n() - m.p();
    let s = (sse / df as f64).sqrt();
    let mut fit = FitResult::new(
        ModelKind::Gs,
        gs.names().to_vec(),
        beta,
        vec![s; m.p()],
        sse,
        df,
    );
    fit.decomposition = Some(gs);
    Ok(fit)
}

/// Outcome change per unit intervention on one Gram–Schmidt direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectSize {
    pub index: usize,
    /// `β̂_i / Q_ii`.
    pub estimate: f64,
    /// `s / Q_ii`.
    pub std_dev: f64,
}

/// Effect-size estimate for position `i` of a Gram–Schmidt fit.
pub fn gs_effect_size(fit: &FitResult, i: usize) -> Result<EffectSize> {
    let gs = match (fit.model, &fit.decomposition) {
        (ModelKind::Gs, Some(gs)) => gs,
        _ => {
            return Err(Error::InvalidScenario(format!(
                "effect size needs a gs fit, got {}",
                fit.model
            )))
        }
    };
    if i >= fit.p() {
        return Err(Error::DimensionMismatch(format!(
            "index {i} out of range for p = {}",
            fit.p()
        )));
    }
    let qii = gs.residual_norm(i);
    if !(qii > RANK_TOL) {
        return Err(Error::DegenerateDirection {
            index: i,
            value: qii,
        });
    }
    Ok(EffectSize {
        index: i,
        estimate: fit.coef[i] / qii,
        std_dev: fit.sigma_hat() / qii,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::regression::ols_fit;

    fn small_design() -> DesignMatrix {
        DesignMatrix::unlabeled(Matrix::from_rows(&[
            [1.0, 0.5],
            [0.0, 0.0],
            [0.0, 0.5],
            [0.0, 0.0],
            [0.0, 0.0],
        ]))
        .unwrap()
    }

    #[test]
    fn effect_size_divides_by_residual_norm() {
        // Q = [[1, 0.5], [0, 0.5]]; y chosen so that β̂₂ = x₂ᵀy = 1.
        let d = small_design();
        let y = [0.3, 0.7, 1.0, -0.2, 0.1];
        let f = gs_fit(&d, &y, &Permutation::identity(2)).unwrap();
        let q = f.q().unwrap();
        assert!((q[(1, 1)] - 0.5).abs() < 1e-15);
        assert!((f.coef[1] - 1.0).abs() < 1e-15);
        let e = gs_effect_size(&f, 1).unwrap();
        assert!((e.estimate - 2.0).abs() < 1e-14);
        assert!((e.std_dev - f.sigma_hat() / 0.5).abs() < 1e-14);
    }

    #[test]
    fn orthonormal_design_effect_equals_coefficient() {
        let d = DesignMatrix::unlabeled(Matrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
            .unwrap();
        let f = gs_fit(&d, &[2.0, -1.0, 0.5], &Permutation::identity(2)).unwrap();
        for i in 0..2 {
            assert_eq!(gs_effect_size(&f, i).unwrap().estimate, f.coef[i]);
        }
    }

    #[test]
    fn effect_size_rejects_other_models() {
        let d = small_design();
        let f = ols_fit(&d, &[0.3, 0.7, 1.0, -0.2, 0.1]).unwrap();
        assert!(gs_effect_size(&f, 0).is_err());
    }

    #[test]
    fn every_coefficient_shares_one_standard_error() {
        let d = small_design();
        let f = gs_fit(
            &d,
            &[0.3, 0.7, 1.0, -0.2, 0.1],
            &Permutation::new(vec![1, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(f.se[0], f.se[1]);
        assert_eq!(f.names, vec!["m2".to_string(), "m1".to_string()]);
    }
}
