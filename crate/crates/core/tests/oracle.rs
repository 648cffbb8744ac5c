use std::f64::consts::PI;

use triwell::error::Error;
use triwell::model::WellSpec;
use triwell::oracle::{
    build_hamiltonian, compare_spectra, eigenvalues_below, eigenvector, sturm_count,
    TridiagonalHamiltonian, DEFAULT_EPS_CUT, DEFAULT_POINTS, MATCH_TOL,
};
use triwell::spectrum::{find_bound_states, find_bound_states_v0, DEFAULT_TOL};

fn box_levels(t: f64, n: usize, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| 2.0 * t * (1.0 - (k as f64 * PI / (n + 1) as f64).cos()))
        .collect()
}

#[test]
fn free_box_matches_discrete_formula() {
    let n = 401;
    let t: f64 = 3.7;
    let tri = TridiagonalHamiltonian {
        diagonal: vec![2.0 * t; n],
        off_diagonal: vec![-t; n - 1],
        grid_step: 1.0,
        half_width: 201.0,
        spec: WellSpec::<f64>::new(1.0, 1.0).unwrap(),
    };
    let exact = box_levels(t, n, 12);
    let got: Vec<f64> = eigenvalues_below(&tri, exact[11] + 1e-3, 1e-14).unwrap();
    assert_eq!(got.len(), 12);
    for (g, e) in got.iter().zip(&exact) {
        assert!((g - e).abs() <= 1e-12_f64, "{g} vs {e}");
    }
}

#[test]
fn vanishing_depth_approaches_box() {
    let n = 201;
    let spec = WellSpec::<f64>::new(1e-13, 1.0).unwrap();
    let tri = build_hamiltonian(&spec, 4.0, n).unwrap();
    let t: f64 = -tri.off_diagonal[0];
    let exact = box_levels(t, n, 5);
    let got: Vec<f64> = eigenvalues_below(&tri, exact[4] + 1e-3, 1e-14).unwrap();
    for (g, e) in got.iter().zip(&exact) {
        assert!((g - e).abs() <= 1e-12_f64, "{g} vs {e}");
    }
}

#[test]
fn midpoint_sits_at_well_bottom() {
    let spec = WellSpec::<f64>::new(10.0, 1.0).unwrap();
    let tri = build_hamiltonian(&spec, 3.0, 101).unwrap();
    let t: f64 = -tri.off_diagonal[0];
    assert_eq!(tri.position(50), 0.0);
    assert!((tri.diagonal[50] - (2.0 * t - 10.0)).abs() <= 1e-12 * t);
    // outside the well the diagonal is just the kinetic term
    assert_eq!(tri.diagonal[0], 2.0 * t);
}

#[test]
fn second_order_convergence() {
    let spec = WellSpec::from_dimensionless(20.0).unwrap();
    let x = 1.0 + 30.0 / 0.5f64.sqrt();
    let ground = |n: usize| {
        let tri = build_hamiltonian(&spec, x, n).unwrap();
        eigenvalues_below(&tri, 0.0, 1e-13).unwrap()[0]
    };
    let (e1, e2, e3) = (ground(2001), ground(4003), ground(8007));
    let ratio = (e1 - e2) / (e2 - e3);
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn count_below_zero_matches_solver() {
    for v0 in [5.0, 20.0, 100.0] {
        let spec = WellSpec::from_dimensionless(v0).unwrap();
        let x = 1.0 + 30.0 / 0.5f64.sqrt();
        let tri = build_hamiltonian(&spec, x, 4001).unwrap();
        let fd = sturm_count(&tri.diagonal, &tri.off_diagonal, 0.0);
        let airy = find_bound_states(&spec, DEFAULT_TOL).unwrap().len();
        assert_eq!(fd, airy, "v0 = {v0}");
    }
}

#[test]
fn oracle_agrees_with_solver() {
    for v0 in [5.0, 20.0, 100.0] {
        let spectrum = find_bound_states_v0(v0, DEFAULT_TOL).unwrap();
        let spec = WellSpec::from_dimensionless(v0).unwrap();
        let report =
            compare_spectra(&spec, &spectrum.states, DEFAULT_EPS_CUT, DEFAULT_POINTS).unwrap();
        assert!(report.passed, "v0 = {v0}: {report:?}");
        assert!(report.max_difference <= MATCH_TOL);
        assert!(!report.compared.is_empty());
        assert_eq!(
            report.compared.len() + report.excluded.len(),
            spectrum.len()
        );
    }
}

#[test]
fn missing_state_is_a_mismatch() {
    let spectrum = find_bound_states_v0(20.0, DEFAULT_TOL).unwrap();
    let spec = WellSpec::from_dimensionless(20.0).unwrap();
    let err = compare_spectra(&spec, &spectrum.states[..1], DEFAULT_EPS_CUT, 2001).unwrap_err();
    assert!(matches!(err, Error::Mismatch(_)), "{err:?}");
}

#[test]
fn eigenvectors_have_increasing_nodes() {
    let spec = WellSpec::from_dimensionless(100.0).unwrap();
    let tri = build_hamiltonian(&spec, 12.0, 2001).unwrap();
    let levels: Vec<f64> = eigenvalues_below(&tri, 0.0, 1e-12).unwrap();
    for (k, &e) in levels.iter().enumerate().take(4) {
        let v: Vec<f64> = eigenvector(&tri, e);
        let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let signif: Vec<f64> = v.into_iter().filter(|x| x.abs() > 1e-6 * peak).collect();
        let nodes = signif.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        assert_eq!(nodes, k);
    }
}

#[test]
fn rejects_bad_cut() {
    let spec = WellSpec::from_dimensionless(5.0).unwrap();
    assert!(compare_spectra(&spec, &[], 0.0, 101).is_err());
    assert!(compare_spectra(&spec, &[], f64::NAN, 101).is_err());
}
