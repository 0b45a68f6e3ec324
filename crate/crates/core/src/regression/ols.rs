use super::fit::{check_response, project_onto_basis, FitResult, ModelKind};
use crate::error::Result;
use crate::linalg::{gram_schmidt, solve_upper, DesignMatrix, Permutation};

/// Multiple regression of `y` on the columns of `M` (no implicit intercept).
///
/// Solved through `M = XQ`: `α̂ = Q⁻¹Xᵀy` and `se(α̂_i) = s‖q_i‖`.
pub fn ols_fit(m: &DesignMatrix, y: &[f64]) -> Result<FitResult> {
    check_response(m.n(), y)?;
    let gs = gram_schmidt(m, &Permutation::identity(m.p()))?;
    let (beta, sse) = project_onto_basis(gs.x(), y);
    let alpha = solve_upper(gs.q(), &beta)?;
    let df = m.n() - m.p();
    let s = (sse / df as f64).sqrt();
    let se = (0..m.p()).map(|i| s * gs.q_row_norm(i)).collect();
    Ok(FitResult::new(
        ModelKind::Naive,
        m.col_names().to_vec(),
        alpha,
        se,
        sse,
        df,
    ))
}
