mod common;

use common::simpson;
use gsreg::distributions::{
    noncentral_t_sf, normal_cdf, normal_quantile, sample_normal, t_cdf, t_quantile, t_sf, Rng,
};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

#[test]
fn t_cdf_at_two_with_ten_df_by_quadrature() {
    // Γ(5.5) = (945/32)√π, Γ(5) = 24.
    let c =
        945.0 / 32.0 * std::f64::consts::PI.sqrt() / (24.0 * (10.0 * std::f64::consts::PI).sqrt());
    let pdf = |x: f64| c * (1.0 + x * x / 10.0).powf(-5.5);
    let oracle = 0.5 + simpson(pdf, 0.0, 2.0, 4000);
    let v = t_cdf(2.0, 10.0).unwrap();
    assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");
    assert!((v - 0.963_306).abs() < 1e-6);
}

#[test]
fn t_cdf_agrees_with_statrs() {
    for &df in &[1.0, 2.0, 3.0, 7.0, 30.0, 45.0, 195.0, 5000.0] {
        let d = StudentsT::new(0.0, 1.0, df).unwrap();
        for &x in &[-8.0, -2.5, -0.3, 0.0, 0.7, 1.676, 3.0, 12.0] {
            let (a, b) = (t_cdf(x, df).unwrap(), d.cdf(x));
            assert!((a - b).abs() < 1e-10, "df {df}, x {x}: {a} vs {b}");
        }
    }
}

#[test]
fn symmetry_and_median() {
    for &df in &[1.0, 4.0, 60.0] {
        assert_eq!(t_cdf(0.0, df).unwrap(), 0.5);
        assert_eq!(t_quantile(0.5, df).unwrap(), 0.0);
        for &x in &[0.1, 1.0, 5.0, 40.0] {
            assert!((t_cdf(-x, df).unwrap() + t_cdf(x, df).unwrap() - 1.0).abs() < 1e-14);
            assert!((t_sf(x, df).unwrap() - t_cdf(-x, df).unwrap()).abs() < 1e-15);
        }
    }
}

#[test]
fn quantile_closed_form_for_one_df() {
    let q = t_quantile(0.95, 1.0).unwrap();
    assert!((q - (std::f64::consts::PI * 0.45).tan()).abs() < 1e-12);
    assert!((q - 6.313_751_514_675_04).abs() < 1e-9);
}

#[test]
fn quantiles_are_strictly_increasing() {
    for &df in &[1.0, 5.0, 50.0] {
        let qs: Vec<f64> = (1..100)
            .map(|i| t_quantile(i as f64 / 100.0, df).unwrap())
            .collect();
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn noncentral_reduces_to_central() {
    for &x in &[-1.5, 0.0, 1.2, 4.0] {
        let a = noncentral_t_sf(x, 12.0, 0.0).unwrap();
        assert!((a - (1.0 - t_cdf(x, 12.0).unwrap())).abs() < 1e-10);
    }
    let c = t_quantile(0.95, 50.0).unwrap();
    assert!((noncentral_t_sf(c, 50.0, 0.0).unwrap() - 0.05).abs() < 1e-8);
}

#[test]
fn noncentral_sf_matches_ten_million_draws() {
    let (x, df, ncp) = (1.676, 50.0, 2.0);
    let exact = noncentral_t_sf(x, df, ncp).unwrap();
    let chi = ChiSquared::new(df).unwrap();
    let mut rng = StdRng::seed_from_u64(20240611);
    let n = 10_000_000u64;
    let hits = (0..n)
        .filter(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            (z + ncp) / (chi.sample(&mut rng) / df).sqrt() > x
        })
        .count();
    let p = hits as f64 / n as f64;
    let se = (p * (1.0 - p) / n as f64).sqrt();
    assert!(
        (p - exact).abs() < 3.0 * se,
        "MC {p} ± {se}, series {exact}"
    );
}

#[test]
fn noncentral_sf_increases_with_ncp() {
    let v: Vec<f64> = (-20..=40)
        .map(|i| noncentral_t_sf(1.3, 25.0, i as f64 * 0.2).unwrap())
        .collect();
    assert!(v.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn large_df_quantile_approaches_normal() {
    assert!((t_quantile(0.975, 1e6).unwrap() - 1.959964).abs() < 1e-4);
}

#[test]
fn normal_cdf_reference_values() {
    // scipy.stats.norm.cdf
    let cases = [
        (-6.0, 9.865_876_450_376_946e-10),
        (-1.96, 0.024_997_895_148_220_435),
        (-0.1, 0.460_172_162_722_971),
        (0.5, 0.691_462_461_274_013_1),
        (2.33, 0.990_096_924_440_835_7),
        (7.0, 0.999_999_999_998_720_1),
    ];
    for (x, p) in cases {
        assert!((normal_cdf(x) - p).abs() <= 1e-14 * p, "x = {x}");
    }
}

#[test]
fn normal_functions_agree_with_statrs() {
    let d = Normal::new(0.0, 1.0).unwrap();
    for &x in &[-6.0, -1.96, -0.1, 0.0, 0.5, 2.33, 7.0] {
        assert!((normal_cdf(x) - d.cdf(x)).abs() < 1e-11);
    }
    for &p in &[1e-10, 0.001, 0.025, 0.4, 0.5, 0.9, 0.999_999] {
        assert!((normal_quantile(p) - d.inverse_cdf(p)).abs() < 1e-9);
    }
}

#[test]
fn sampler_moments_and_reproducibility() {
    let a = sample_normal(&mut Rng::new(99, 3), 1_000_000);
    let n = a.len() as f64;
    let mean = a.iter().sum::<f64>() / n;
    let var = a.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    assert!(mean.abs() < 4.0 / n.sqrt());
    assert!((var - 1.0).abs() < 0.01);
    let b = sample_normal(&mut Rng::new(99, 3), 1000);
    assert_eq!(&a[..1000], &b[..]);
    assert!(sample_normal(&mut Rng::new(99, 3), 0).is_empty());
    assert_ne!(sample_normal(&mut Rng::new(99, 4), 5), b[..5].to_vec());
}
