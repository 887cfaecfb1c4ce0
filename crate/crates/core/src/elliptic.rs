//! Long-Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
//!
//! [`WeierstrassCurve`] works over `Q` with exact arithmetic. [`NumericCurve`]
//! has real `f64` coefficients and complex points, and carries the analytic
//! side: the period lattice and the elliptic logarithm `u(P) = int_O^P dx/y'`
//! where `y' = 2y + a1 x + a3`.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dilogarithm::QPoint;
use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::numerics::{cubic_roots, integrate_endpoint_singular_complex, integrate_endpoint_singular_with, Tolerance};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl CurvePoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        CurvePoint::Affine { x: q(x), y: q(y) }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn to_complex(&self) -> ComplexPoint {
        match self {
            CurvePoint::Infinity => ComplexPoint::Infinity,
            CurvePoint::Affine { x, y } => ComplexPoint::Affine(
                Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0),
                Complex64::new(y.to_f64().unwrap_or(f64::NAN), 0.0),
            ),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// A curve over `Q`. Construction rejects singular models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    a: [BigRational; 5],
}

/// The standard invariants of a Weierstrass model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants<T> {
    pub b2: T,
    pub b4: T,
    pub b6: T,
    pub b8: T,
    pub c4: T,
    pub discriminant: T,
}

fn invariants<T>(a1: &T, a2: &T, a3: &T, a4: &T, a6: &T, k: impl Fn(i64) -> T) -> Invariants<T>
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    let b2 = a1.clone() * a1.clone() + k(4) * a2.clone();
    let b4 = k(2) * a4.clone() + a1.clone() * a3.clone();
    let b6 = a3.clone() * a3.clone() + k(4) * a6.clone();
    let b8 = a1.clone() * a1.clone() * a6.clone() + k(4) * a2.clone() * a6.clone()
        - a1.clone() * a3.clone() * a4.clone()
        + a2.clone() * a3.clone() * a3.clone()
        - a4.clone() * a4.clone();
    let c4 = b2.clone() * b2.clone() - k(24) * b4.clone();
    let discriminant = k(0) - b2.clone() * b2.clone() * b8.clone() - k(8) * b4.clone() * b4.clone() * b4.clone()
        - k(27) * b6.clone() * b6.clone()
        + k(9) * b2.clone() * b4.clone() * b6.clone();
    Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        discriminant,
    }
}

impl WeierstrassCurve {
    pub fn new(a1: BigRational, a2: BigRational, a3: BigRational, a4: BigRational, a6: BigRational) -> Result<Self> {
        let c = WeierstrassCurve { a: [a1, a2, a3, a4, a6] };
        if c.invariants().discriminant.is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(c)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(q(a[0]), q(a[1]), q(a[2]), q(a[3]), q(a[4]))
    }

    /// The Deuring form `Y^2 + (a-2)XY + aY = X^3`.
    pub fn deuring(alpha: BigRational) -> Result<Self> {
        let z = BigRational::zero();
        Self::new(alpha.clone() - q(2), z.clone(), alpha, z.clone(), z)
    }

    /// `W^2 = Z^3 + (a^2-24) Z^2 - 16(a^2-9) Z`.
    pub fn f_model(alpha: BigRational) -> Result<Self> {
        let z = BigRational::zero();
        let a2 = alpha.clone() * alpha.clone();
        Self::new(z.clone(), a2.clone() - q(24), z.clone(), q(-16) * (a2 - q(9)), z)
    }

    pub fn coefficients(&self) -> &[BigRational; 5] {
        &self.a
    }

    /// Integer coefficients, if the model is integral.
    pub fn integral_coefficients(&self) -> Option<[i64; 5]> {
        let mut out = [0i64; 5];
        for (o, a) in out.iter_mut().zip(self.a.iter()) {
            if !a.is_integer() {
                return None;
            }
            *o = a.to_integer().to_i64()?;
        }
        Some(out)
    }

    pub fn invariants(&self) -> Invariants<BigRational> {
        let [a1, a2, a3, a4, a6] = &self.a;
        invariants(a1, a2, a3, a4, a6, q)
    }

    pub fn discriminant(&self) -> BigRational {
        self.invariants().discriminant
    }

    pub fn j_invariant(&self) -> BigRational {
        let inv = self.invariants();
        inv.c4.clone() * inv.c4.clone() * inv.c4 / inv.discriminant
    }

    pub fn to_numeric(&self) -> NumericCurve {
        let f = |v: &BigRational| v.to_f64().unwrap_or(f64::NAN);
        NumericCurve::new([f(&self.a[0]), f(&self.a[1]), f(&self.a[2]), f(&self.a[3]), f(&self.a[4])])
    }

    fn residual(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let [a1, a2, a3, a4, a6] = &self.a;
        y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.residual(x, y).is_zero(),
        }
    }

    fn check(&self, p: &CurvePoint) -> Result<()> {
        if let CurvePoint::Affine { x, y } = p {
            let r = self.residual(x, y);
            if !r.is_zero() {
                return Err(Error::NotOnCurve(r.to_f64().unwrap_or(f64::NAN).abs()));
            }
        }
        Ok(())
    }

    pub fn negate(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.check(p)?;
        Ok(match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let [a1, _, a3, _, _] = &self.a;
                CurvePoint::Affine {
                    x: x.clone(),
                    y: -y - a1 * x - a3,
                }
            }
        })
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &CurvePoint, r: &CurvePoint) -> Result<CurvePoint> {
        self.check(p)?;
        self.check(r)?;
        let (x1, y1, x2, y2) = match (p, r) {
            (CurvePoint::Infinity, _) => return Ok(r.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 == x2 {
            let denom = y1 + y2 + a1 * x2 + a3;
            if denom.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let d = q(2) * y1 + a1 * x1 + a3;
            let lambda = (q(3) * x1 * x1 + q(2) * a2 * x1 + a4 - a1 * y1) / &d;
            let nu = (-(x1 * x1 * x1) + a4 * x1 + q(2) * a6 - a3 * y1) / &d;
            (lambda, nu)
        } else {
            let d = x2 - x1;
            ((y2 - y1) / &d, (y1 * x2 - y2 * x1) / &d)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda + a1) * &x3 - nu - a3;
        Ok(CurvePoint::Affine { x: x3, y: y3 })
    }

    /// `n * P` by double-and-add; negative `n` multiplies `-P`.
    pub fn multiply(&self, p: &CurvePoint, n: i64) -> Result<CurvePoint> {
        let base = if n < 0 { self.negate(p)? } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow)?;
            }
            k >>= 1;
            if k > 0 {
                pow = self.add(&pow, &pow)?;
            }
        }
        Ok(acc)
    }

    /// Order of a torsion point, searched up to `bound`.
    pub fn order(&self, p: &CurvePoint, bound: u32) -> Result<Option<u32>> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add(&acc, p)?;
        }
        Ok(None)
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1}, {a2}, {a3}, {a4}, {a6}]")
    }
}

/// Exact discriminant and `j`-invariant; singular models are rejected.
pub fn curve_validate(c: &WeierstrassCurve) -> Result<(BigRational, BigRational)> {
    let d = c.discriminant();
    if d.is_zero() {
        return Err(Error::SingularModel);
    }
    Ok((d, c.j_invariant()))
}

/// A point with complex coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ComplexPoint {
    Infinity,
    Affine(Complex64, Complex64),
}

impl ComplexPoint {
    pub fn real(x: f64, y: f64) -> Self {
        ComplexPoint::Affine(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ComplexPoint::Infinity)
    }

    pub fn coords(&self) -> Option<(Complex64, Complex64)> {
        match *self {
            ComplexPoint::Infinity => None,
            ComplexPoint::Affine(x, y) => Some((x, y)),
        }
    }
}

/// A curve with real coefficients; points may be complex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCurve {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a6: f64,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Principal square root with `-0.0` imaginary parts treated as `+0.0`, so
/// that points on the negative real axis always take the upper value.
fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = Complex64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    z.sqrt()
}

impl NumericCurve {
    pub fn new(a: [f64; 5]) -> Self {
        NumericCurve {
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            a6: a[4],
        }
    }

    pub fn deuring(alpha: f64) -> Self {
        NumericCurve::new([alpha - 2.0, 0.0, alpha, 0.0, 0.0])
    }

    pub fn f_model(alpha: f64) -> Self {
        let a2 = alpha * alpha;
        NumericCurve::new([0.0, a2 - 24.0, 0.0, -16.0 * (a2 - 9.0), 0.0])
    }

    pub fn coefficients(&self) -> [f64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn invariants(&self) -> Invariants<f64> {
        invariants(&self.a1, &self.a2, &self.a3, &self.a4, &self.a6, |k| k as f64)
    }

    pub fn discriminant(&self) -> f64 {
        self.invariants().discriminant
    }

    /// Size of the coefficients, used to make tolerances scale-aware.
    pub fn scale(&self) -> f64 {
        let inv = self.invariants();
        1.0 + inv.b2.abs() / 12.0 + inv.b4.abs().sqrt() + inv.b6.abs().cbrt()
    }

    pub fn residual(&self, p: &ComplexPoint) -> f64 {
        match *p {
            ComplexPoint::Infinity => 0.0,
            ComplexPoint::Affine(x, y) => {
                let lhs = y * y + x * y * self.a1 + y * self.a3;
                let rhs = x * x * x + x * x * self.a2 + x * self.a4 + self.a6;
                (lhs - rhs).norm()
            }
        }
    }

    /// Residual relative to the size of the terms involved.
    pub fn relative_residual(&self, p: &ComplexPoint) -> f64 {
        match *p {
            ComplexPoint::Infinity => 0.0,
            ComplexPoint::Affine(x, y) => {
                let size = 1.0 + y.norm_sqr() + x.norm().powi(3) + self.scale().powi(3);
                self.residual(p) / size
            }
        }
    }

    pub fn contains(&self, p: &ComplexPoint, tol: f64) -> bool {
        self.relative_residual(p) < tol
    }

    /// `y' = 2y + a1 x + a3`, the square root of `4x^3 + b2 x^2 + 2 b4 x + b6`.
    pub fn y_prime(&self, x: Complex64, y: Complex64) -> Complex64 {
        y * 2.0 + x * self.a1 + self.a3
    }

    pub fn negate(&self, p: &ComplexPoint) -> ComplexPoint {
        match *p {
            ComplexPoint::Infinity => ComplexPoint::Infinity,
            ComplexPoint::Affine(x, y) => ComplexPoint::Affine(x, -y - x * self.a1 - self.a3),
        }
    }

    /// Chord-tangent addition in floating point. Coordinates that agree to
    /// `1e-10` (relative) are treated as equal.
    pub fn add(&self, p: &ComplexPoint, r: &ComplexPoint) -> ComplexPoint {
        let (x1, y1, x2, y2) = match (*p, *r) {
            (ComplexPoint::Infinity, _) => return *r,
            (_, ComplexPoint::Infinity) => return *p,
            (ComplexPoint::Affine(x1, y1), ComplexPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let scale = 1.0 + x1.norm().max(x2.norm()) + self.scale();
        let yscale = 1.0 + y1.norm().max(y2.norm()) + scale.powf(1.5);
        let (lambda, nu) = if (x1 - x2).norm() < 1e-10 * scale {
            let denom = y1 + y2 + x2 * self.a1 + self.a3;
            if denom.norm() < 1e-10 * yscale {
                return ComplexPoint::Infinity;
            }
            let d = y1 * 2.0 + x1 * self.a1 + self.a3;
            let lambda = (x1 * x1 * 3.0 + x1 * (2.0 * self.a2) + self.a4 - y1 * self.a1) / d;
            let nu = (-(x1 * x1 * x1) + x1 * self.a4 + 2.0 * self.a6 - y1 * self.a3) / d;
            (lambda, nu)
        } else {
            let d = x2 - x1;
            ((y2 - y1) / d, (y1 * x2 - y2 * x1) / d)
        };
        let x3 = lambda * lambda + lambda * self.a1 - self.a2 - x1 - x2;
        let y3 = -(lambda + self.a1) * x3 - nu - self.a3;
        ComplexPoint::Affine(x3, y3)
    }

    pub fn multiply(&self, p: &ComplexPoint, n: i64) -> ComplexPoint {
        let base = if n < 0 { self.negate(p) } else { *p };
        let mut k = n.unsigned_abs();
        let mut acc = ComplexPoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add(&pow, &pow);
            }
        }
        acc
    }

    /// Roots of `4x^3 + b2 x^2 + 2 b4 x + b6`. For positive discriminant the
    /// three real roots are returned in decreasing order. Otherwise the real
    /// root comes first, followed by the root with positive imaginary part.
    pub fn two_torsion_roots(&self) -> [Complex64; 3] {
        let inv = self.invariants();
        let mut r = cubic_roots(4.0, inv.b2, 2.0 * inv.b4, inv.b6);
        let poly = |x: f64| ((4.0 * x + inv.b2) * x + 2.0 * inv.b4) * x + inv.b6;
        let dpoly = |x: f64| (12.0 * x + 2.0 * inv.b2) * x + 2.0 * inv.b4;
        if inv.discriminant > 0.0 {
            let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
            for x in re.iter_mut() {
                for _ in 0..3 {
                    let d = dpoly(*x);
                    if d != 0.0 {
                        let step = poly(*x) / d;
                        if step.is_finite() {
                            *x -= step;
                        }
                    }
                }
            }
            re.sort_by(|a, b| b.total_cmp(a));
            [c(re[0]), c(re[1]), c(re[2])]
        } else {
            r.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
            let mut e1 = r[0].re;
            for _ in 0..3 {
                let d = dpoly(e1);
                if d != 0.0 {
                    let step = poly(e1) / d;
                    if step.is_finite() {
                        e1 -= step;
                    }
                }
            }
            let mut pair = r[1];
            if pair.im < 0.0 {
                pair = pair.conj();
            }
            // The pair is fixed by Vieta from the polished real root.
            let sum = -inv.b2 / 4.0 - e1;
            let prod = -inv.b6 / (4.0 * e1);
            let pair = if e1.abs() > 1e-8 && prod.is_finite() {
                let disc = sum * sum - 4.0 * prod;
                if disc < 0.0 {
                    Complex64::new(sum / 2.0, (-disc).sqrt() / 2.0)
                } else {
                    pair
                }
            } else {
                pair
            };
            [c(e1), pair, pair.conj()]
        }
    }
}

impl From<&WeierstrassCurve> for NumericCurve {
    fn from(c: &WeierstrassCurve) -> Self {
        c.to_numeric()
    }
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= 1e-16 * an {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// `(omega1, omega2)` with `omega1 > 0` real, `Im(omega2/omega1) > 0`, and
/// `q = exp(2 pi i omega2/omega1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodLattice {
    pub omega1: Complex64,
    pub omega2: Complex64,
    pub tau: Complex64,
    pub q: Complex64,
    /// Number of connected components of the real locus.
    pub real_components: u8,
}

impl PeriodLattice {
    fn from_periods(omega1: Complex64, omega2: Complex64, real_components: u8) -> Self {
        let tau = omega2 / omega1;
        let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
        PeriodLattice {
            omega1,
            omega2,
            tau,
            q,
            real_components,
        }
    }

    /// The real period `c_inf * omega1`, i.e. the integral of `|dx/y'|` over
    /// the whole real locus.
    pub fn real_period(&self) -> f64 {
        self.real_components as f64 * self.omega1.re
    }

    /// Coordinates `(a, b)` with `u = a omega1 + b omega2`.
    pub fn coordinates(&self, u: Complex64) -> (f64, f64) {
        let b = u.im / self.omega2.im;
        let a = (u.re - b * self.omega2.re) / self.omega1.re;
        (a, b)
    }

    /// Representative of `u` in the parallelogram `[0,1) omega1 + [0,1) omega2`.
    pub fn reduce(&self, u: Complex64) -> Complex64 {
        let (a, b) = self.coordinates(u);
        let a = a - a.floor();
        let b = b - b.floor();
        self.omega1 * a + self.omega2 * b
    }

    /// Distance from `u` to the nearest lattice point.
    pub fn distance_to_lattice(&self, u: Complex64) -> f64 {
        let (a, b) = self.coordinates(u);
        let mut best = f64::INFINITY;
        for da in [-1.0, 0.0, 1.0] {
            for db in [-1.0, 0.0, 1.0] {
                let w = self.omega1 * (a.round() + da) + self.omega2 * (b.round() + db);
                best = best.min((u - w).norm());
            }
        }
        best
    }

    /// `z = exp(2 pi i u / omega1)`.
    pub fn z(&self, u: Complex64) -> Complex64 {
        (Complex64::new(0.0, 2.0 * PI) * u / self.omega1).exp()
    }
}

/// Period lattice of `omega = dx / (2y + a1 x + a3)` by the AGM.
pub fn period_lattice(curve: &NumericCurve) -> Result<PeriodLattice> {
    let inv = curve.invariants();
    if !inv.discriminant.is_finite() || inv.discriminant.abs() < 1e-300 {
        return Err(Error::SingularModel);
    }
    let roots = curve.two_torsion_roots();
    if inv.discriminant > 0.0 {
        let (e1, e2, e3) = (roots[0].re, roots[1].re, roots[2].re);
        let w1 = PI / agm((e1 - e3).sqrt(), (e1 - e2).sqrt());
        let w2 = PI / agm((e1 - e3).sqrt(), (e2 - e3).sqrt());
        Ok(PeriodLattice::from_periods(c(w1), Complex64::new(0.0, w2), 2))
    } else {
        let e1 = roots[0].re;
        let beta = 3.0 * e1 + inv.b2 / 4.0;
        let r = (3.0 * e1 * e1 + inv.b2 * e1 / 2.0 + inv.b4 / 2.0).sqrt();
        let w1 = 2.0 * PI / agm(2.0 * r.sqrt(), (2.0 * r + beta).sqrt());
        let w2 = Complex64::new(-w1 / 2.0, PI / agm(2.0 * r.sqrt(), (2.0 * r - beta).sqrt()));
        Ok(PeriodLattice::from_periods(c(w1), w2, 1))
    }
}

const LOG_TOL: f64 = 1e-13;

/// `int_{x0}^{x0 + inf} dx / (2 prod sqrt(x - e_k))` along a horizontal ray,
/// mapped to `[0,1)` by `x = x0 + rho s/(1-s)`.
fn ray_integral(x0: Complex64, roots: &[Complex64; 3], snapped: [bool; 3], rho: f64) -> Result<Complex64> {
    let tol = Tolerance::absolute(LOG_TOL * (1.0 + 1.0 / rho.sqrt()));
    let r = integrate_endpoint_singular_complex(
        |p| {
            let s = p.from_start;
            let one_minus = p.to_end;
            let mut prod = Complex64::new(1.0, 0.0);
            for k in 0..3 {
                let d = if snapped[k] { c(0.0) } else { x0 - roots[k] };
                let n = d * one_minus + rho * s;
                prod *= principal_sqrt(n);
            }
            c(rho) / (prod * 2.0 * one_minus.sqrt())
        },
        0.0,
        1.0,
        tol,
    )?;
    Ok(r.value)
}

/// Elliptic logarithm `u(P) = int_O^P dx / y'`, modulo the lattice.
///
/// Real points use real integrals on their component. Complex points are
/// integrated along a vertical segment from `x(P)` followed by a horizontal
/// ray to `+inf`, with the branch of `y'` followed across the cuts of the
/// principal square roots.
pub fn elliptic_log(curve: &NumericCurve, lattice: &PeriodLattice, p: &ComplexPoint) -> Result<Complex64> {
    let (x, y) = match *p {
        ComplexPoint::Infinity => return Ok(c(0.0)),
        ComplexPoint::Affine(x, y) => (x, y),
    };
    if !curve.contains(p, 1e-10) {
        return Err(Error::NotOnCurve(curve.relative_residual(p)));
    }
    let roots = curve.two_torsion_roots();
    let scale = curve.scale() + x.norm();
    let yp = curve.y_prime(x, y);
    let is_real = x.im.abs() <= 1e-14 * scale && y.im.abs() <= 1e-14 * scale.powf(1.5);
    let u = if is_real {
        real_log(curve, &roots, x.re, yp.re, scale)?
    } else {
        path_log(&roots, x, yp, scale)?
    };
    Ok(lattice.reduce(u))
}

fn snap(roots: &[Complex64; 3], x: Complex64, scale: f64) -> [bool; 3] {
    let mut out = [false; 3];
    for k in 0..3 {
        out[k] = (x - roots[k]).norm() < 1e-12 * scale;
    }
    out
}

fn real_log(curve: &NumericCurve, roots: &[Complex64; 3], x: f64, yp: f64, scale: f64) -> Result<Complex64> {
    let positive = curve.discriminant() > 0.0;
    let e1 = roots[0].re;
    let sign = if yp >= 0.0 { 1.0 } else { -1.0 };
    if x >= e1 - 1e-12 * scale {
        let xs = x.max(e1);
        let snapped = snap(roots, c(xs), scale);
        let i = ray_integral(c(xs), roots, snapped, scale)?;
        return Ok(c(-sign * i.re));
    }
    if !positive {
        return Err(Error::NotOnCurve(f64::NAN));
    }
    let (e2, e3) = (roots[1].re, roots[2].re);
    let lattice = period_lattice(curve)?;
    let xs = x.clamp(e3, e2);
    let span = xs - e3;
    let integral = if span <= 1e-14 * scale {
        0.0
    } else {
        let to_e2 = e2 - xs;
        let to_e1 = e1 - xs;
        integrate_endpoint_singular_with(
            |p| 1.0 / (2.0 * (p.from_start * (to_e2 + p.to_end) * (to_e1 + p.to_end)).sqrt()),
            e3,
            xs,
            Tolerance::absolute(LOG_TOL),
        )?
        .value
    };
    Ok(lattice.omega2 * 0.5 + sign * integral)
}

fn g(deltas: &[Complex64; 3]) -> Complex64 {
    deltas.iter().fold(c(2.0), |acc, &d| acc * principal_sqrt(d))
}

fn path_log(roots: &[Complex64; 3], x: Complex64, yp: Complex64, scale: f64) -> Result<Complex64> {
    let snapped = snap(roots, x, scale);
    let torsion = snapped.iter().any(|&s| s) || yp.norm() < 1e-12 * scale.powf(1.5);
    let base: [Complex64; 3] = std::array::from_fn(|k| if snapped[k] { c(0.0) } else { x - roots[k] });

    let blocked = |d: f64| {
        roots.iter().enumerate().any(|(k, e)| {
            !snapped[k] && (e.re - x.re).abs() < 1e-9 * scale && (e.im - x.im) * d > 0.0
        })
    };
    let d = if !blocked(1.0) {
        1.0
    } else if !blocked(-1.0) {
        -1.0
    } else {
        return Err(Error::SingularPath(format!("no admissible path from x = {x}")));
    };
    let height = roots.iter().map(|e| (e.im - x.im).abs()).fold(0.0, f64::max) + scale;

    // Heights along the vertical leg at which a principal-sqrt cut is crossed.
    let mut crossings: Vec<f64> = roots
        .iter()
        .enumerate()
        .filter(|(k, e)| !snapped[*k] && x.re < e.re)
        .map(|(_, e)| (e.im - x.im) * d)
        .filter(|&s| s > 0.0 && s < height)
        .collect();
    crossings.sort_by(f64::total_cmp);

    let dir = Complex64::new(0.0, d);
    let mut eps = 1.0;
    if !torsion {
        let first = crossings.first().copied().unwrap_or(height);
        let delta = (1e-8 * scale).min(0.5 * first);
        let moved: [Complex64; 3] = std::array::from_fn(|k| base[k] + dir * delta);
        let ratio = yp / g(&moved);
        eps = if ratio.re >= 0.0 { 1.0 } else { -1.0 };
    }

    let tol = Tolerance::absolute(LOG_TOL);
    let mut total = c(0.0);
    let mut knots = vec![0.0];
    knots.extend(crossings.iter().copied());
    knots.push(height);
    for (seg, w) in knots.windows(2).enumerate() {
        let (s0, s1) = (w[0], w[1]);
        if s1 - s0 <= 0.0 {
            if seg + 1 < knots.len() - 1 {
                eps = -eps;
            }
            continue;
        }
        let seg_eps = eps;
        let r = integrate_endpoint_singular_complex(
            |p| {
                let s = s0 + p.from_start;
                let deltas: [Complex64; 3] = std::array::from_fn(|k| base[k] + dir * s);
                dir * seg_eps / g(&deltas)
            },
            s0,
            s1,
            tol,
        )?;
        total += r.value;
        // Each interior knot is one cut crossing.
        if seg + 1 < knots.len() - 1 {
            eps = -eps;
        }
    }
    let corner = Complex64::new(x.re, x.im + d * height);
    let ray = ray_integral(corner, roots, [false; 3], scale)?;
    total += ray * eps;
    Ok(-total)
}

/// The point of `C^x / q^Z` attached to `P`.
pub fn q_point(curve: &NumericCurve, lattice: &PeriodLattice, p: &ComplexPoint) -> Result<QPoint> {
    let u = elliptic_log(curve, lattice, p)?;
    QPoint::new(lattice.q, lattice.z(u))
}

/// Coefficients of `h(Z) = c3 Z^3 + c2 Z^2 + c1 Z + c0`, highest first.
pub type Cubic = [f64; 4];

fn eval_cubic(h: &Cubic, z: Complex64) -> Complex64 {
    ((z * h[0] + h[1]) * z + h[2]) * z + h[3]
}

/// The Weierstrass model of a family together with the coordinate changes
/// used to reach it.
///
/// For `S`, `Q` and `R` the plane curve is birational to a hyperelliptic
/// model `Y_i^2 = h_i(X_i^2)`, which maps 2:1 onto the elliptic curve through
/// `Z_i = X_i^2` followed by an affine change to `(X, Y)` or `(Z, W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelBundle {
    pub spec: FamilySpec,
    pub curve: NumericCurve,
    pub cubic: Option<Cubic>,
}

fn pole(what: &str) -> Error {
    Error::Degenerate(format!("{what} has a pole at this point"))
}

fn checked(v: Complex64, what: &str) -> Result<Complex64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(pole(what))
    }
}

/// Family model data. Parameters where the model degenerates are rejected.
pub fn family_models(family: Family, param: f64) -> Result<ModelBundle> {
    let a = param;
    if !a.is_finite() {
        return Err(Error::InvalidInput(format!("parameter {a} is not finite")));
    }
    let spec = FamilySpec::new(family, a);
    let degenerate = |why: &str| Err(Error::DegenerateFamily(format!("{spec}: {why}")));
    let (curve, cubic) = match family {
        Family::P => (NumericCurve::deuring(a), None),
        Family::S => {
            if a * a + a == 0.0 {
                return degenerate("a^2 + a = 0");
            }
            let h = [a * a + a, -2.0 * a * a + 5.0 * a + 4.0, a * a - 5.0 * a + 8.0, 4.0 - a];
            (NumericCurve::deuring(a), Some(h))
        }
        Family::Q => {
            if a * a - 9.0 == 0.0 {
                return degenerate("a^2 - 9 = 0");
            }
            let h = [a * a - 9.0, -(2.0 * a * a - 3.0), a * a + 5.0, 1.0];
            (NumericCurve::f_model(a), Some(h))
        }
        Family::R => {
            let k = a * a - a - 2.0;
            if k == 0.0 {
                return degenerate("b^2 - b - 2 = 0");
            }
            let h = [k, -2.0 * a * a + 11.0 * a - 2.0, a * a - 11.0 * a + 26.0, a - 6.0];
            (NumericCurve::f_model(a - 2.0), Some(h))
        }
    };
    if curve.discriminant().abs() < 1e-9 {
        return degenerate("singular Weierstrass model");
    }
    Ok(ModelBundle { spec, curve, cubic })
}

impl ModelBundle {
    fn param(&self) -> f64 {
        self.spec.param
    }

    /// Coefficient scale of the affine change between `(Z_i, Y_i)` and the model.
    fn affine_scale(&self) -> f64 {
        let a = self.param();
        match self.spec.family {
            Family::P => 1.0,
            Family::S => a * a + a,
            Family::Q => a * a - 9.0,
            Family::R => a * a - a - 2.0,
        }
    }

    /// Hyperelliptic residual `Y_i^2 - h_i(X_i^2)`.
    pub fn hyperelliptic_residual(&self, xi: Complex64, yi: Complex64) -> Option<f64> {
        self.cubic.map(|h| (yi * yi - eval_cubic(&h, xi * xi)).norm())
    }

    /// From the plane curve `{family = 0}` to `(X_i, Y_i)`.
    pub fn plane_to_hyperelliptic(&self, x: Complex64, y: Complex64) -> Result<(Complex64, Complex64)> {
        let a = self.param();
        let one = c(1.0);
        let xi = checked((x + one) / (x - one), "X_i")?;
        let yi = match self.spec.family {
            Family::P => return Err(Error::InvalidInput("family P maps directly to its model".into())),
            Family::S => (y * y - x.powi(4)) * 4.0 / (y * (x - one).powi(3) * (x + one)),
            Family::Q => (((x * x + x + one) * y) * 2.0 + x * (x + one) * a) * 4.0 / (x - one).powi(3),
            Family::R => {
                let b = x.powi(4) + x.powi(3) * a + x * x * (2.0 * a - 4.0) + x * a + one;
                ((x * x + x + one) * y * 2.0 + b) * 4.0 / ((x - one).powi(3) * (x + one))
            }
        };
        Ok((xi, checked(yi, "Y_i")?))
    }

    /// Inverse of [`ModelBundle::plane_to_hyperelliptic`].
    pub fn hyperelliptic_to_plane(&self, xi: Complex64, yi: Complex64) -> Result<(Complex64, Complex64)> {
        let a = self.param();
        let one = c(1.0);
        let x = checked((xi + one) / (xi - one), "x")?;
        let y = match self.spec.family {
            Family::P => return Err(Error::InvalidInput("family P maps directly to its model".into())),
            Family::S => {
                (xi * yi * 2.0 - xi.powi(4) * (2.0 * a + 1.0) + xi * xi * (2.0 * a - 6.0) - one) / (xi - one).powi(4)
            }
            Family::Q => (yi - xi * (xi * xi - one) * a) / ((xi - one) * (xi * xi * 3.0 + one)),
            Family::R => {
                (xi * yi * 2.0 - xi.powi(4) * (2.0 * a - 1.0) + xi * xi * (2.0 * a - 10.0) + one)
                    / ((xi - one).powi(2) * (xi * xi * 3.0 + one))
            }
        };
        Ok((x, checked(y, "y")?))
    }

    /// Affine change from `(Z_i, Y_i)`, `Z_i = X_i^2`, to the Weierstrass model.
    pub fn hyperelliptic_to_model(&self, zi: Complex64, yi: Complex64) -> Result<(Complex64, Complex64)> {
        let a = self.param();
        let k = self.affine_scale();
        Ok(match self.spec.family {
            Family::P => return Err(Error::InvalidInput("family P has no hyperelliptic model".into())),
            Family::S => (
                (zi * k - (a * a - 3.0 * a)) / 4.0,
                (yi * (a + 1.0) + zi * (-a * a + a + 2.0) + (a * a - 5.0 * a + 2.0)) * (a / 8.0),
            ),
            Family::Q => ((zi - 1.0) * k, yi * k),
            Family::R => (zi * k - (a * a - 5.0 * a - 6.0), yi * k),
        })
    }

    /// Inverse of [`ModelBundle::hyperelliptic_to_model`].
    pub fn model_to_hyperelliptic(&self, xm: Complex64, ym: Complex64) -> Result<(Complex64, Complex64)> {
        let a = self.param();
        let k = self.affine_scale();
        Ok(match self.spec.family {
            Family::P => return Err(Error::InvalidInput("family P has no hyperelliptic model".into())),
            Family::S => ((xm * 4.0 + (a * a - 3.0 * a)) / k, (ym * 2.0 + xm * (a - 2.0) + a) * 4.0 / k),
            Family::Q => (xm / k + 1.0, ym / k),
            Family::R => ((xm + (a * a - 5.0 * a - 6.0)) / k, ym / k),
        })
    }

    /// From the plane curve to the Weierstrass model.
    pub fn plane_to_model(&self, x: Complex64, y: Complex64) -> Result<(Complex64, Complex64)> {
        let a = self.param();
        match self.spec.family {
            Family::P => {
                let d = x + y - a;
                Ok((
                    checked((x + y + 1.0) * a / d, "X")?,
                    checked((-x * a + y + 1.0) * a / d, "Y")?,
                ))
            }
            _ => {
                let (xi, yi) = self.plane_to_hyperelliptic(x, y)?;
                self.hyperelliptic_to_model(xi * xi, yi)
            }
        }
    }

    /// Inverse of the birational map for family `P`.
    pub fn model_to_plane(&self, xm: Complex64, ym: Complex64) -> Result<(Complex64, Complex64)> {
        let a = self.param();
        match self.spec.family {
            Family::P => {
                let d = xm - a;
                Ok((
                    checked((xm - ym) / d, "x")?,
                    checked((ym + xm * (a - 1.0) + a) / d, "y")?,
                ))
            }
            _ => Err(Error::InvalidInput(
                "the model is a 2:1 image; use model_to_hyperelliptic".into(),
            )),
        }
    }
}

/// A named point with complex coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedPoint {
    pub name: &'static str,
    pub point: ComplexPoint,
}

/// `P = (a, a)`, `U = U_+` and `V = V_+` on the Deuring curve.
pub fn deuring_points(alpha: f64) -> Vec<NamedPoint> {
    let a = alpha;
    let su = principal_sqrt(c(a * a - 16.0 * a + 32.0));
    let sv = principal_sqrt(c(a * a - 10.0 * a + 9.0));
    let u = ComplexPoint::Affine((su - a) * (a / 8.0), (-su + (a - 8.0)) * (a * a / 16.0));
    let v = ComplexPoint::Affine(
        (sv * (a + 1.0) + (-a * a + 4.0 * a - 3.0)) / 8.0,
        (-sv * (a * a - 2.0 * a - 3.0) + (a.powi(3) - 7.0 * a * a - a - 9.0)) / 16.0,
    );
    vec![
        NamedPoint {
            name: "P",
            point: ComplexPoint::real(a, a),
        },
        NamedPoint { name: "U", point: u },
        NamedPoint { name: "V", point: v },
    ]
}

/// `P = (0,0)`, `S = S_+`, `T` and `A` on `W^2 = Z^3 + (a^2-24) Z^2 - 16(a^2-9) Z`.
pub fn f_model_points(alpha: f64) -> Vec<NamedPoint> {
    let a = alpha;
    let b = a + 2.0;
    let s = ComplexPoint::real(4.0 * a + 12.0, a * (4.0 * a + 12.0));
    let t = ComplexPoint::Affine(
        c(-4.0 * (a * a - 9.0) / 3.0),
        Complex64::new(0.0, 4.0 * (a - 3.0) * a * (a + 3.0) / (3.0 * 3f64.sqrt())),
    );
    let disc = b.powi(4) - 8.0 * b.powi(3) + 40.0 * b * b - 96.0 * b + 80.0;
    let ax = (principal_sqrt(c(disc)) - (b * b - 4.0 * b - 20.0)) / 2.0;
    vec![
        NamedPoint {
            name: "P",
            point: ComplexPoint::real(0.0, 0.0),
        },
        NamedPoint { name: "S", point: s },
        NamedPoint { name: "T", point: t },
        NamedPoint {
            name: "A",
            point: ComplexPoint::Affine(ax, c(0.0)),
        },
    ]
}

/// Points of the Deuring model as exact rationals: the multiples of `(a, a)`.
pub fn deuring_torsion_table(alpha: &BigRational) -> [CurvePoint; 6] {
    let a = alpha.clone();
    [
        CurvePoint::Infinity,
        CurvePoint::new(a.clone(), a.clone()),
        CurvePoint::new(BigRational::zero(), BigRational::zero()),
        CurvePoint::new(-BigRational::one(), -BigRational::one()),
        CurvePoint::new(BigRational::zero(), -a.clone()),
        CurvePoint::new(a.clone(), -(a.clone() * a)),
    ]
}

/// Sign helper for reports: `+1` for positive rationals, `-1` otherwise.
pub fn rational_sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Abscissa;

    fn r(n: i64) -> BigRational {
        q(n)
    }

    #[test]
    fn group_law_on_e3() {
        let e = WeierstrassCurve::deuring(r(3)).unwrap();
        let p = CurvePoint::from_ints(3, 3);
        assert_eq!(e.add(&p, &p).unwrap(), CurvePoint::from_ints(0, 0));
        assert_eq!(e.multiply(&p, 3).unwrap(), CurvePoint::from_ints(-1, -1));
        assert_eq!(e.multiply(&p, 6).unwrap(), CurvePoint::Infinity);
        assert_eq!(e.order(&p, 20).unwrap(), Some(6));
        assert!(!e.contains(&CurvePoint::from_ints(1, 1)));
        assert!(matches!(
            e.add(&p, &CurvePoint::from_ints(1, 1)),
            Err(Error::NotOnCurve(_))
        ));
    }

    #[test]
    fn torsion_table_matches_multiples() {
        for alpha in [-8, -4, -2, 1, 2, 3, 4, 5, 7] {
            let a = r(alpha);
            let e = WeierstrassCurve::deuring(a.clone()).unwrap();
            let table = deuring_torsion_table(&a);
            for (k, pt) in table.iter().enumerate() {
                assert_eq!(&e.multiply(&table[1], k as i64).unwrap(), pt, "a={alpha}, k={k}");
            }
        }
    }

    #[test]
    fn validate_discriminants() {
        let e1 = WeierstrassCurve::deuring(r(1)).unwrap();
        let (d, _) = curve_validate(&e1).unwrap();
        // Direct evaluation of the discriminant of y^2 - xy + y = x^3.
        let (a1, a3) = (-1i64, 1i64);
        let b2 = a1 * a1;
        let b4 = a1 * a3;
        let b6 = a3 * a3;
        let b8 = 0; // a2 = a4 = a6 = 0
        let oracle = -b2 * b2 * b8 - 8 * b4.pow(3) - 27 * b6 * b6 + 9 * b2 * b4 * b6;
        assert_eq!(d, r(oracle));
        assert_eq!(d, r(-28));
        assert!(e1.contains(&CurvePoint::from_ints(1, 1)));
        let e5 = WeierstrassCurve::deuring(r(5)).unwrap();
        assert!(e5.contains(&CurvePoint::from_ints(5, 5)));
        assert!(matches!(WeierstrassCurve::deuring(r(0)), Err(Error::SingularModel)));
        assert_eq!(WeierstrassCurve::deuring(r(-4)).unwrap().discriminant(), r(6912));
    }

    #[test]
    fn real_period_of_y2_4x3_4x() {
        let curve = NumericCurve::new([0.0, 0.0, 0.0, -1.0, 0.0]);
        // y^2 = x^3 - x, so y' = 2y and y'^2 = 4x^3 - 4x.
        let lat = period_lattice(&curve).unwrap();
        let oracle = 2.0
            * integrate_endpoint_singular_with(
                |p: Abscissa| {
                    // x = 1/(1-t) on [0,1), so x - 1 = t/(1-t).
                    let (t, s) = (p.from_start, p.to_end);
                    let x = 1.0 / s;
                    (x * (t / s) * (x + 1.0)).sqrt().recip() / (s * s)
                },
                0.0,
                1.0,
                Tolerance::absolute(1e-11),
            )
            .unwrap()
            .value;
        assert!((lat.real_period() - 5.2441151086).abs() < 1e-9);
        assert!((lat.real_period() - oracle).abs() < 1e-9);
        assert!(lat.tau.re.abs() < 1e-14 && lat.tau.im > 0.0);
        assert!(lat.q.im.abs() < 1e-14 && lat.q.re > 0.0 && lat.q.re < 1.0);
    }

    #[test]
    fn period_scaling() {
        let base = NumericCurve::new([0.0, 0.0, 0.0, -1.0, 1.0]);
        let u: f64 = 1.7;
        let scaled = NumericCurve::new([0.0, 0.0, 0.0, -u.powi(4), u.powi(6)]);
        let l0 = period_lattice(&base).unwrap();
        let l1 = period_lattice(&scaled).unwrap();
        assert!((l1.omega1.re * u - l0.omega1.re).abs() < 1e-12);
        assert!((l1.tau - l0.tau).norm() < 1e-12);
    }

    #[test]
    fn negative_discriminant_lattice_is_rhombic() {
        let e1 = NumericCurve::deuring(1.0);
        let lat = period_lattice(&e1).unwrap();
        assert!((lat.omega1.re - 5.9440258682).abs() < 1e-9);
        assert!((lat.omega2.im - 1.32549123968).abs() < 1e-9);
        assert!((lat.tau.re + 0.5).abs() < 1e-14);
        assert!(lat.q.re < 0.0 && lat.q.im.abs() < 1e-14);
        assert_eq!(lat.real_components, 1);
    }

    #[test]
    fn elliptic_log_torsion_on_e1() {
        let curve = NumericCurve::deuring(1.0);
        let lat = period_lattice(&curve).unwrap();
        let p = ComplexPoint::real(1.0, 1.0);
        let u = elliptic_log(&curve, &lat, &p).unwrap();
        assert!(lat.distance_to_lattice(u * 6.0) < 1e-9);
        assert!(lat.distance_to_lattice(u * 3.0) > 1e-3);
        assert!(lat.distance_to_lattice(u * 2.0) > 1e-3);
        assert_eq!(elliptic_log(&curve, &lat, &ComplexPoint::Infinity).unwrap(), c(0.0));
        let qp = q_point(&curve, &lat, &p).unwrap();
        assert!((qp.z().norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn elliptic_log_homomorphism_on_real_and_complex_points() {
        let curve = NumericCurve::deuring(-4.0);
        let lat = period_lattice(&curve).unwrap();
        let pts = [
            ComplexPoint::real(-4.0, -4.0),
            ComplexPoint::real(0.0, 0.0),
            ComplexPoint::real(-1.0, -1.0),
        ];
        for p in pts {
            let u = elliptic_log(&curve, &lat, &p).unwrap();
            let u2 = elliptic_log(&curve, &lat, &curve.add(&p, &p)).unwrap();
            assert!(lat.distance_to_lattice(u2 - u * 2.0) < 1e-9, "{p:?}");
        }
    }

    #[test]
    fn complex_path_agrees_with_real_formula() {
        let curve = NumericCurve::deuring(5.0);
        let roots = curve.two_torsion_roots();
        let lat = period_lattice(&curve).unwrap();
        for x in [7.0, 12.5, 30.0] {
            let xs = c(x);
            let b = xs * (5.0 - 2.0) + 5.0;
            let y = (-b + principal_sqrt(b * b + xs.powi(3) * 4.0)) / 2.0;
            let p = ComplexPoint::Affine(xs, y);
            let yp = curve.y_prime(xs, y);
            let real = real_log(&curve, &roots, x, yp.re, curve.scale()).unwrap();
            let path = path_log(&roots, xs, yp, curve.scale() + x).unwrap();
            assert!(lat.distance_to_lattice(real - path) < 1e-10, "{real} {path}");
            let _ = p;
        }
    }

    #[test]
    fn family_models_examples() {
        let q4 = family_models(Family::Q, 4.0).unwrap();
        assert_eq!(q4.curve.coefficients(), [0.0, -8.0, 0.0, -112.0, 0.0]);
        let r6 = family_models(Family::R, 6.0).unwrap();
        assert_eq!(r6.curve, q4.curve);
        let p3 = family_models(Family::P, 3.0).unwrap();
        assert_eq!(p3.curve.coefficients(), [1.0, 0.0, 3.0, 0.0, 0.0]);
        assert!(matches!(family_models(Family::Q, 3.0), Err(Error::DegenerateFamily(_))));
        assert!(matches!(family_models(Family::S, -1.0), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn deuring_and_f_points_lie_on_their_curves() {
        for a in [1.0, 3.0, 5.0, -2.0, 7.0] {
            let e = NumericCurve::deuring(a);
            for np in deuring_points(a) {
                assert!(e.contains(&np.point, 1e-12), "a={a} {}", np.name);
            }
            let f = NumericCurve::f_model(a);
            for np in f_model_points(a) {
                assert!(f.contains(&np.point, 1e-12), "a={a} {}", np.name);
            }
        }
    }
}
