mod common;

use common::*;
use gsreg::distributions::Rng;
use gsreg::linalg::{
    center_vector, stack_replicates, stack_vector, DesignMatrix, Matrix, Permutation,
};
use gsreg::regression::{
    gs_effect_size, gs_fit, ols_fit, ridge_fit, ridge_k_auto, Alternative, FixedK,
    HoerlKennardBaldwin,
};

fn centered_problem(n: usize, p: usize, seed: u64) -> (DesignMatrix, Vec<f64>) {
    let mut rng = Rng::new(seed, 0);
    let d = DesignMatrix::unlabeled(random_matrix(n, p, &mut rng))
        .unwrap()
        .centered()
        .unwrap();
    let noise = random_vector(n, &mut rng);
    let signal = d
        .values()
        .matvec(&(1..=p).map(|j| j as f64 * 0.3).collect::<Vec<_>>());
    let y: Vec<f64> = signal.iter().zip(&noise).map(|(s, e)| s + e).collect();
    (d, center_vector(&y))
}

#[test]
fn ols_matches_explicit_normal_equations() {
    let (d, y) = centered_problem(50, 3, 1);
    let (g, b) = normal_equations(d.values(), &y);
    let oracle = mat_vec(&gauss_jordan_inverse(&g), &b);
    let fit = ols_fit(&d, &y).unwrap();
    assert!(max_rel_err(&fit.coef, &oracle) < 1e-10);

    let ginv = gauss_jordan_inverse(&g);
    for j in 0..3 {
        let se = (fit.sigma_hat2 * ginv[j][j]).sqrt();
        assert!(rel_err(fit.se[j], se) < 1e-10);
    }
}

#[test]
fn orthonormal_design_with_noiseless_response() {
    let d = DesignMatrix::unlabeled(Matrix::from_rows(&[
        [1.0, 0.0],
        [0.0, 1.0],
        [0.0, 0.0],
        [0.0, 0.0],
    ]))
    .unwrap();
    let y = d.col(0).iter().map(|v| 2.0 * v).collect::<Vec<_>>();
    let f = ols_fit(&d, &y).unwrap();
    assert_eq!(f.coef[0], 2.0);
    assert_eq!(f.sse, 0.0);
}

#[test]
fn ridge_matches_direct_inversion() {
    let (d, y) = centered_problem(60, 3, 2);
    let (mut g, b) = normal_equations(d.values(), &y);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    let oracle = mat_vec(&gauss_jordan_inverse(&g), &b);
    let fit = ridge_fit(&d, &y, &FixedK(1.0)).unwrap();
    assert!(max_rel_err(&fit.coef, &oracle) < 1e-10);
    assert_eq!(fit.ridge_k, Some(1.0));
}

#[test]
fn ridge_covariance_matches_sandwich_formula() {
    let (d, y) = centered_problem(40, 3, 12);
    let k = 2.5;
    let fit = ridge_fit(&d, &y, &FixedK(k)).unwrap();
    let (mtm, _) = normal_equations(d.values(), &y);
    let mut a = mtm.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] += k;
    }
    let ai = gauss_jordan_inverse(&a);
    for j in 0..3 {
        // (A⁻¹ MᵀM A⁻¹)_jj
        let col: Vec<f64> = (0..3).map(|r| ai[r][j]).collect();
        let v = mat_vec(&mtm, &col);
        let var = fit.sigma_hat2 * col.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
        assert!(rel_err(fit.se[j], var.sqrt()) < 1e-10);
    }
}

#[test]
fn huge_ridge_constant_approaches_scaled_projection() {
    let (d, y) = centered_problem(30, 3, 3);
    let norms = d.col_norms();
    let mut unit = d.clone();
    for (j, n) in norms.iter().enumerate() {
        unit = unit
            .with_scaled_column(j, 1.0 / n)
            .unwrap()
            .assume_centered();
    }
    let k = 1e9;
    let fit = ridge_fit(&unit, &y, &FixedK(k)).unwrap();
    let mty = unit.values().tr_matvec(&y);
    for j in 0..3 {
        assert!(rel_err(fit.coef[j], mty[j] / k) < 1e-6);
    }
}

#[test]
fn hkb_recomputed_on_stacked_data() {
    let (d, y) = centered_problem(25, 3, 4);
    let k1 = ridge_k_auto(&d, &y).unwrap();
    let s = stack_replicates(&d, 4).unwrap();
    let ys = stack_vector(&y, 4);
    // α̂ unchanged; s² rescales by (k·n − k·p)/(n − p)·(SSE ratio) = (n − p)·4/(4n − p).
    let ols = ols_fit(&d, &y).unwrap();
    let (n, p) = (25.0, 3.0);
    let s2_stacked = 4.0 * ols.sse / (4.0 * n - p);
    let a2: f64 = ols.coef.iter().map(|a| a * a).sum();
    let k4 = ridge_k_auto(&s, &ys).unwrap();
    assert!(rel_err(k4, p * s2_stacked / a2) < 1e-10);
    assert!(rel_err(k1, p * ols.sigma_hat2 / a2) < 1e-12);
    assert!(
        ridge_fit(&s, &ys, &HoerlKennardBaldwin)
            .unwrap()
            .ridge_k
            .unwrap()
            == k4
    );
}

#[test]
fn first_gs_position_equals_marginal_regression() {
    let (d, y) = centered_problem(35, 4, 5);
    let order = Permutation::new(vec![2, 0, 1, 3]).unwrap();
    let fit = gs_fit(&d, &y, &order).unwrap();
    let m = d.col(2);
    let mm: f64 = m.iter().map(|v| v * v).sum();
    let my: f64 = m.iter().zip(&y).map(|(a, b)| a * b).sum();
    // Marginal estimate in the unit-norm parameterization with the full model's s.
    assert!(rel_err(fit.coef[0], my / mm.sqrt()) < 1e-10);
    let t_marginal = (my / mm) / (fit.sigma_hat() / mm.sqrt());
    assert!(rel_err(fit.t_stat[0], t_marginal) < 1e-10);
}

#[test]
fn single_predictor_gs_equals_simple_regression() {
    let (d, y) = centered_problem(20, 1, 6);
    let g = gs_fit(&d, &y, &Permutation::identity(1)).unwrap();
    let o = ols_fit(&d, &y).unwrap();
    assert!(rel_err(g.t_stat[0], o.t_stat[0]) < 1e-12);
    assert!(
        (g.p_value(0, Alternative::TwoSided) - o.p_value(0, Alternative::TwoSided)).abs() < 1e-14
    );
}

#[test]
fn effect_size_is_homogeneous_in_column_scale() {
    let (d, y) = centered_problem(30, 3, 7);
    let order = Permutation::identity(3);
    let f = gs_fit(&d, &y, &order).unwrap();
    let e = gs_effect_size(&f, 1).unwrap();
    let c = 3.7;
    let scaled = d.with_scaled_column(1, c).unwrap();
    let fs = gs_fit(&scaled, &y, &order).unwrap();
    let es = gs_effect_size(&fs, 1).unwrap();
    let (q, qs) = (f.q().unwrap()[(1, 1)], fs.q().unwrap()[(1, 1)]);
    assert!(rel_err(qs, c * q) < 1e-12);
    assert!(rel_err(es.estimate * qs, e.estimate * q) < 1e-12);
}

#[test]
fn p_value_identities() {
    let (d, y) = centered_problem(30, 3, 8);
    for fit in [
        ols_fit(&d, &y).unwrap(),
        gs_fit(&d, &y, &Permutation::identity(3)).unwrap(),
    ] {
        for i in 0..3 {
            let g = fit.p_value(i, Alternative::Greater);
            let l = fit.p_value(i, Alternative::Less);
            assert!((g + l - 1.0).abs() < 1e-14);
            assert!((fit.p_two_sided[i] - 2.0 * g.min(1.0 - g)).abs() < 1e-14);
            assert!(rel_err(fit.t_stat[i], fit.coef[i] / fit.se[i]) < 1e-15);
        }
    }
}
