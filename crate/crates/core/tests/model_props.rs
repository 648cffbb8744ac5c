use proptest::prelude::*;
use triwell::model::*;

proptest! {
    #[test]
    fn epsilon_round_trip(eps_frac in 0.05_f64..1.0, v0 in 0.01_f64..1000.0) {
        let eps = -eps_frac * v0;
        let back = epsilon_of_z0(z0_of_epsilon(eps, v0), v0);
        prop_assert!((back - eps).abs() <= 1e-14 * eps.abs());
    }

    // Near threshold `1 + z0 / v0^{1/3}` cancels; the error floor is a few
    // ulps of v0 rather than of epsilon.
    #[test]
    fn epsilon_round_trip_near_threshold(eps_frac in 1e-8_f64..0.05, v0 in 0.01_f64..1000.0) {
        let eps = -eps_frac * v0;
        let back = epsilon_of_z0(z0_of_epsilon(eps, v0), v0);
        prop_assert!((back - eps).abs() <= 1e-14 * eps.abs() + 4.0 * f64::EPSILON * v0);
    }

    #[test]
    fn epsilon_decreases_in_z0(v0 in 0.01_f64..1000.0, a in -1.0_f64..0.0, b in -1.0_f64..0.0) {
        let c = v0.cbrt();
        let (lo, hi) = if a < b { (a * c, b * c) } else { (b * c, a * c) };
        prop_assume!(hi - lo > 1e-9 * c);
        prop_assert!(epsilon_of_z0(lo, v0) > epsilon_of_z0(hi, v0));
    }

    #[test]
    fn closed_form_energy_agrees(
        depth in 0.01_f64..100.0,
        width in 0.05_f64..10.0,
        hbar in 0.2_f64..5.0,
        mass in 0.2_f64..5.0,
        frac in 0.0_f64..1.0,
    ) {
        let spec = WellSpec::with_units(depth, width, hbar, mass).unwrap();
        let v0 = nondimensionalize(&spec);
        let z0 = -frac * v0.cbrt();
        let e1 = energy_of_epsilon(epsilon_of_z0(z0, v0), &spec);
        let e2 = energy_of_z0(z0, &spec);
        prop_assert!((e1 - e2).abs() <= 1e-12 * depth);
    }

    #[test]
    fn potential_is_even_and_bounded(x in -5.0_f64..5.0, depth in 0.1_f64..50.0, width in 0.1_f64..3.0) {
        let spec = WellSpec::new(depth, width).unwrap();
        let v = potential_value(x, &spec).unwrap();
        prop_assert_eq!(v, potential_value(-x, &spec).unwrap());
        prop_assert!(v >= -depth && v <= 0.0);
    }

    #[test]
    fn z_is_affine_and_even(x in -3.0_f64..3.0, z0 in -4.0_f64..0.0, v0 in 0.1_f64..100.0) {
        let z = z_of_x(x, z0, v0, 1.0);
        prop_assert_eq!(z, z_of_x(-x, z0, v0, 1.0));
        prop_assert!((z - z0 - v0.cbrt() * x.abs()).abs() < 1e-12);
    }
}

#[test]
fn potential_is_continuous_with_minimum_at_origin() {
    let spec = WellSpec::new(3.0, 2.0).unwrap();
    let mut prev = potential_value(-4.0, &spec).unwrap();
    let mut min = f64::INFINITY;
    let n = 8000;
    for i in 1..=n {
        let x = -4.0 + 8.0 * i as f64 / n as f64;
        let v = potential_value(x, &spec).unwrap();
        assert!((v - prev).abs() <= 3.0 / 2.0 * 8.0 / n as f64 + 1e-12);
        min = min.min(v);
        prev = v;
    }
    assert_eq!(min, -3.0);
}
