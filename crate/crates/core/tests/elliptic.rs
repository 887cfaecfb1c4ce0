use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use regulab_core::elliptic::*;
use regulab_core::mahler::family_poly;
use regulab_core::{Family, FamilySpec};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A curve with the given `a1, a2, a3` passing through two chosen points.
fn curve_through(a: [i64; 3], p1: (BigRational, BigRational), p2: (BigRational, BigRational)) -> Option<WeierstrassCurve> {
    let [a1, a2, a3] = a.map(|v| q(v, 1));
    let lhs = |(x, y): &(BigRational, BigRational)| {
        y * y + &a1 * x * y + &a3 * y - x * x * x - &a2 * x * x
    };
    let (f1, f2) = (lhs(&p1), lhs(&p2));
    let dx = &p1.0 - &p2.0;
    if dx.is_zero() {
        return None;
    }
    let a4 = (&f1 - &f2) / dx;
    let a6 = f1 - &a4 * &p1.0;
    WeierstrassCurve::new(a1, a2, a3, a4, a6).ok()
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..12, 1i64..5).prop_map(|(n, d)| q(n, d))
}

#[test]
fn torsion_multiples_of_p_on_deuring_curves() {
    for a in [1i64, 2, 3, 5, 7, -2, -4] {
        let e = WeierstrassCurve::deuring(q(a, 1)).unwrap();
        let p = CurvePoint::from_ints(a, a);
        assert_eq!(e.order(&p, 20).unwrap(), Some(6), "alpha {a}");
        let want = [(0, 0), (-1, -1), (0, -a), (a, -a * a)];
        for (k, (x, y)) in (2..=5).zip(want) {
            assert_eq!(e.multiply(&p, k).unwrap(), CurvePoint::from_ints(x, y), "alpha {a}, {k}P");
        }
    }
}

#[test]
fn elliptic_log_is_a_homomorphism_on_real_points() {
    for a in [1.0, 3.0, 7.0, -4.0, 2.5] {
        let e = NumericCurve::deuring(a);
        let lat = period_lattice(&e).unwrap();
        let [a1, a2, a3, a4, a6] = e.coefficients();
        let mut pts = Vec::new();
        for x in [a + 0.5, a + 2.0, 10.0 + a.abs(), 25.0] {
            let b = a1 * x + a3;
            let f = x * x * x + a2 * x * x + a4 * x + a6;
            let d = b * b + 4.0 * f;
            if d >= 0.0 {
                pts.push(ComplexPoint::real(x, (-b + d.sqrt()) / 2.0));
            }
        }
        assert!(pts.len() >= 2, "alpha {a}");
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                let s = e.add(&pts[i], &pts[j]);
                let lhs = elliptic_log(&e, &lat, &s).unwrap();
                let rhs = elliptic_log(&e, &lat, &pts[i]).unwrap() + elliptic_log(&e, &lat, &pts[j]).unwrap();
                assert!(lat.distance_to_lattice(lhs - rhs) < 1e-9, "alpha {a} ({i},{j})");
            }
        }
    }
}

#[test]
fn coordinate_changes_round_trip() {
    let mut worst: f64 = 0.0;
    for fam in Family::ALL {
        for a in [6.5, 9.5, -4.5] {
            let bundle = family_models(fam, a).unwrap();
            let poly = family_poly(FamilySpec::new(fam, a));
            for k in 0..25 {
                let x = Complex64::new(0.3 + 0.11 * k as f64, -0.7 + 0.05 * k as f64);
                for y in poly.y_roots(x) {
                    let (xm, ym) = bundle.plane_to_model(x, y).unwrap();
                    let model_pt = ComplexPoint::Affine(xm, ym);
                    assert!(bundle.curve.relative_residual(&model_pt) < 1e-10, "{fam} {a}");
                    if fam == Family::P {
                        let (x2, y2) = bundle.model_to_plane(xm, ym).unwrap();
                        worst = worst.max((x2 - x).norm() + (y2 - y).norm());
                    } else {
                        let (xi, yi) = bundle.plane_to_hyperelliptic(x, y).unwrap();
                        assert!(bundle.hyperelliptic_residual(xi, yi).unwrap() < 1e-8 * (1.0 + yi.norm_sqr()));
                        let (x2, y2) = bundle.hyperelliptic_to_plane(xi, yi).unwrap();
                        worst = worst.max((x2 - x).norm() + (y2 - y).norm());
                        let (zi, yi2) = bundle.model_to_hyperelliptic(xm, ym).unwrap();
                        worst = worst.max(((zi - xi * xi).norm() + (yi2 - yi).norm()) / (1.0 + yi.norm()));
                    }
                }
            }
        }
    }
    assert!(worst < 1e-12 * 100.0, "{worst}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_law_is_commutative_and_associative(
        a in prop::array::uniform3(-3i64..3),
        x1 in small_rational(), y1 in small_rational(),
        x2 in small_rational(), y2 in small_rational(),
    ) {
        let Some(e) = curve_through(a, (x1.clone(), y1.clone()), (x2.clone(), y2.clone())) else {
            return Ok(());
        };
        let p = CurvePoint::new(x1, y1);
        let r = CurvePoint::new(x2, y2);
        prop_assert!(e.contains(&p) && e.contains(&r));
        let s = e.add(&p, &p).unwrap();
        prop_assert_eq!(e.add(&p, &r).unwrap(), e.add(&r, &p).unwrap());
        let left = e.add(&e.add(&p, &r).unwrap(), &s).unwrap();
        let right = e.add(&p, &e.add(&r, &s).unwrap()).unwrap();
        prop_assert!(e.contains(&left));
        prop_assert_eq!(left, right);
        let neg = e.negate(&p).unwrap();
        prop_assert!(e.add(&p, &neg).unwrap().is_infinity());
    }
}
