use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use regulab_core::numerics::*;

fn tol() -> Tolerance {
    Tolerance::absolute(1e-12)
}

#[test]
fn arcsine_integral_is_pi() {
    let r = integrate_endpoint_singular_with(
        |p: Abscissa| 1.0 / (p.from_start * p.to_end).sqrt(),
        0.0,
        1.0,
        Tolerance::absolute(1e-12),
    )
    .unwrap();
    assert!((r.value - PI).abs() < 1e-10, "{}", r.value);
}

#[test]
fn log_singularity() {
    // ∫_0^1 log t dt = -1
    let r = integrate_endpoint_singular_with(|p: Abscissa| p.from_start.ln(), 0.0, 1.0, tol()).unwrap();
    assert!((r.value + 1.0).abs() < 1e-11);
}

#[test]
fn panels_split_at_a_kink() {
    let r = integrate_adaptive_panels(|x: f64| (x - 0.3).abs(), &[0.0, 0.3, 1.0], tol()).unwrap();
    assert!((r.value - (0.045 + 0.245)).abs() < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadrature_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, w in 0.5f64..4.0) {
        let f = |x: f64| (w * x).sin();
        let g = |x: f64| (-x * x).exp();
        let fg = integrate_adaptive(|x| a * f(x) + b * g(x), -1.0, 2.0, tol()).unwrap().value;
        let fi = integrate_adaptive(f, -1.0, 2.0, tol()).unwrap().value;
        let gi = integrate_adaptive(g, -1.0, 2.0, tol()).unwrap().value;
        prop_assert!((fg - (a * fi + b * gi)).abs() < 1e-10);
    }

    #[test]
    fn singular_integrator_is_symmetric(k in 0.1f64..5.0, e in 0.3f64..0.9) {
        // f(t) = t^{-e/2} (1-t)^{-e/3} e^{kt}: the reflection swaps the endpoint exponents.
        let fwd = integrate_endpoint_singular_with(
            |p: Abscissa| p.from_start.powf(-e / 2.0) * p.to_end.powf(-e / 3.0) * (k * p.x).exp(),
            0.0, 1.0, tol()).unwrap().value;
        let rev = integrate_endpoint_singular_with(
            |p: Abscissa| p.to_end.powf(-e / 2.0) * p.from_start.powf(-e / 3.0) * (k * (1.0 - p.x)).exp(),
            0.0, 1.0, tol()).unwrap().value;
        prop_assert!((fwd - rev).abs() < 1e-9 * fwd.abs());
    }

    #[test]
    fn stable_quadratic_satisfies_vieta(
        ar in -5.0f64..5.0, ai in -5.0f64..5.0,
        br in -50.0f64..50.0, bi in -50.0f64..50.0,
        cr in -5.0f64..5.0, ci in -5.0f64..5.0,
    ) {
        let a = Complex64::new(ar, ai);
        prop_assume!(a.norm() > 0.1);
        let b = Complex64::new(br, bi);
        let c = Complex64::new(cr, ci);
        prop_assume!(c.norm() > 1e-3);
        let (r1, r2) = solve_quadratic_stable(a, b, c).unwrap();
        prop_assert!((a * r1 * r2 - c).norm() < 1e-12 * c.norm().max(1.0) * 10.0);
        prop_assert!((a * (r1 + r2) + b).norm() < 1e-12 * b.norm().max(1.0) * 10.0);
    }
}
