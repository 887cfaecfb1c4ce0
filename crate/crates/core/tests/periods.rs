use proptest::prelude::*;
use regulab_core::numerics::Tolerance;
use regulab_core::periods::*;
use regulab_core::Family;

fn tol() -> Tolerance {
    Tolerance::absolute(1e-13)
}

// Reference values from 25-digit mpmath quadrature of the same integrands.
#[test]
fn raw_integrals_match_reference() {
    let cases: &[(f64, f64)] = &[(0.5, 1.42024434873636), (1.0, 1.32549123968248), (3.0, 1.15839211131408), (5.0, 1.14635616957311), (7.5, 1.48676167679469)];
    for &(a, want) in cases {
        assert!((integral_s(a, tol()).unwrap().value - want).abs() < 1e-11, "S at {a}");
        assert!((integral_s_form(a, SForm::Unit, tol()).unwrap().value - want).abs() < 1e-11, "s-form at {a}");
    }
    let neg: &[(f64, f64)] = &[(-1.5, 1.54297364448915), (-2.0, 1.13708259952054), (-5.0, 0.500009248641136), (-20.0, 0.144455973825422)];
    for &(a, want) in neg {
        assert!((integral_p(a, false, tol()).unwrap().value - want).abs() < 1e-10, "P at {a}");
    }
    let qr: &[(f64, f64)] = &[(4.0, 0.858759375797978), (5.0, 0.65075588803666), (8.0, 0.394871963696284), (12.0, 0.262093313734291)];
    for &(a, want) in qr {
        assert!((integral_q(a, tol()).unwrap().value - want).abs() < 1e-10, "Q at {a}");
    }
}

#[test]
fn identities_on_grids() {
    for k in 1..=15 {
        let a = 0.5 * k as f64;
        let r = verify_period_identity(PeriodIdentity::SmallParameter, a, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
    }
    for a in [-1.5, -2.0, -5.0, -20.0] {
        let r = verify_period_identity(PeriodIdentity::NegativeParameter, a, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
    }
    for a in [4.0, 5.0, 8.0, 12.0] {
        let r = verify_period_identity(PeriodIdentity::QR, a, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn identities_reject_out_of_range() {
    assert!(verify_period_identity(PeriodIdentity::SmallParameter, 9.0, 1e-8).is_err());
    assert!(verify_period_identity(PeriodIdentity::NegativeParameter, -0.5, 1e-8).is_err());
    assert!(verify_period_identity(PeriodIdentity::QR, 3.0, 1e-8).is_err());
}

#[test]
fn every_substitution_checks_out() {
    for map in MapId::ALL {
        let params: &[f64] = match map {
            MapId::Affine => &[3.0, 0.5, -2.0, -7.0],
            MapId::QR => &[4.0, 5.0, 9.5],
            _ => &[-1.5, -2.0, -5.0, -20.0],
        };
        for &a in params {
            let r = change_of_variable_check(map, a, 1e-8).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn substitution_errors() {
    assert!(matches!(
        change_of_variable_check(MapId::Affine, 0.0, 1e-8),
        Err(regulab_core::Error::Degenerate(_))
    ));
    assert!(change_of_variable_check(MapId::Isogeny, 2.0, 1e-8).is_err());
    assert!(isogeny_map(-2.0, 0.0).is_err());
}

#[test]
fn cycles_against_lattices() {
    let p1 = cycle_vs_lattice(Family::P, 1.0, tol()).unwrap();
    assert_eq!((p1.numerator, p1.denominator), (1, 1));
    assert!(p1.distance < 1e-9);
    let p3 = cycle_vs_lattice(Family::P, 3.0, tol()).unwrap();
    assert!(p3.distance < 1e-6, "{p3:?}");
    let s3 = cycle_vs_lattice(Family::S, 3.0, tol()).unwrap();
    assert!(s3.distance < 1e-6, "{s3:?}");
    // The S integral is twice the P integral, so the ratios differ by 2.
    assert!((s3.ratio - 2.0 * p3.ratio).abs() < 1e-9, "{s3:?} {p3:?}");
    let q5 = cycle_vs_lattice(Family::Q, 5.0, tol()).unwrap();
    let r7 = cycle_vs_lattice(Family::R, 7.0, tol()).unwrap();
    assert!((q5.ratio - r7.ratio).abs() < 1e-6, "{q5:?} {r7:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integrands_are_positive_inside_their_limits(a in prop_oneof![0.05f64..4.0, -30.0f64..-1.05]) {
        for fam in [Family::P, Family::S] {
            let c = cycle_integral(fam, a, Tolerance::absolute(1e-10)).unwrap();
            prop_assert!(c.value > 0.0 && c.value.is_finite());
            prop_assert!(c.lower < c.upper);
        }
    }

    #[test]
    fn large_regime_integrals_are_positive(a in 4.0f64..40.0) {
        let q = cycle_integral(Family::Q, a, Tolerance::absolute(1e-10)).unwrap();
        let r = cycle_integral(Family::R, a + 2.0, Tolerance::absolute(1e-10)).unwrap();
        prop_assert!(q.value > 0.0 && r.value > 0.0);
        prop_assert!((q.value - r.value).abs() < 1e-8);
    }

    #[test]
    fn involution_squares_to_identity(a in -40.0f64..-1.01, w in 0.0f64..1.0) {
        let s = involution(a, w);
        if let Ok(s) = s {
            if let Ok(back) = involution(a, s) {
                prop_assert!((back - w).abs() < 1e-12 * (1.0 + w.abs()) + 1e-12 * (1.0 + s.abs()));
            }
        }
    }

    #[test]
    fn isogeny_is_increasing_beyond_v0(a in -40.0f64..-1.01, x in 0.0f64..50.0, dx in 1e-3f64..5.0) {
        let v = v0(a) + x;
        prop_assert!(isogeny_map(a, v + dx).unwrap() > isogeny_map(a, v).unwrap());
    }
}
