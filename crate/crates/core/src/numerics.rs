//! Quadrature and small numeric helpers.
//!
//! Two integrators are provided. [`integrate_adaptive`] is a globally adaptive
//! Gauss–Kronrod (7/15) scheme for integrands that are smooth on the closed
//! interval or have mild interior kinks. [`integrate_endpoint_singular`] uses
//! the tanh-sinh (double exponential) substitution and tolerates integrable
//! blow-up such as `(x-a)^(-1/2)` at either end.
//!
//! Endpoint-singular integrands usually vanish like `x - a` or `b - x` inside a
//! square root. Computing `b - x` from a rounded `x` loses every digit near the
//! end, so [`integrate_endpoint_singular_with`] hands the integrand an
//! [`Abscissa`] carrying both offsets computed directly from the substitution.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Accumulation mode for quadrature sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    /// Compensated (double-double) summation of quadrature nodes.
    #[serde(rename = "dd")]
    DoubleDouble,
}

impl Precision {
    /// Reads `REGULAB_PRECISION` (`double` or `dd`). Unknown values fall back
    /// to [`Precision::Double`].
    pub fn from_env() -> Self {
        match std::env::var("REGULAB_PRECISION").as_deref() {
            Ok("dd") => Precision::DoubleDouble,
            _ => Precision::Double,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    pub max_evaluations: usize,
    pub precision: Precision,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            absolute: 1e-10,
            relative: 0.0,
            max_evaluations: 400_000,
            precision: Precision::from_env(),
        }
    }
}

impl Tolerance {
    pub fn absolute(absolute: f64) -> Self {
        Tolerance {
            absolute,
            ..Default::default()
        }
    }

    pub fn with_relative(mut self, relative: f64) -> Self {
        self.relative = relative;
        self
    }

    pub fn with_max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.absolute > 0.0) || self.relative < 0.0 || self.max_evaluations == 0 {
            return Err(Error::InvalidInput(format!("bad tolerance {self:?}")));
        }
        Ok(())
    }

    /// The acceptance threshold for an estimate of size `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.absolute.max(self.relative * value.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Values a quadrature rule can accumulate: real or complex.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
    /// Real part, used for the scalar reported inside convergence errors.
    fn real_part(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn real_part(self) -> f64 {
        self
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn real_part(self) -> f64 {
        self.re
    }
}

/// Running sum, optionally compensated (Neumaier).
#[derive(Clone, Copy, Debug)]
pub struct Accumulator<T: QuadValue> {
    sum: T,
    carry: T,
    compensated: bool,
}

impl<T: QuadValue> Accumulator<T> {
    pub fn new(precision: Precision) -> Self {
        Accumulator {
            sum: T::zero(),
            carry: T::zero(),
            compensated: precision == Precision::DoubleDouble,
        }
    }

    pub fn add(&mut self, x: T) {
        if !self.compensated {
            self.sum = self.sum + x;
            return;
        }
        let t = self.sum + x;
        // Neumaier's branch, applied componentwise through magnitudes.
        let err = if self.sum.magnitude() >= x.magnitude() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.carry = self.carry + err;
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// A node of the tanh-sinh rule: the abscissa and its distances to both ends,
/// each computed without cancellation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    /// `x - a`
    pub from_start: f64,
    /// `b - x`
    pub to_end: f64,
}

// Kronrod 15-point nodes/weights and the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let s = f1 + f2;
        kron = kron + s * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + s * WG[j / 2];
        }
    }
    let value = kron * half;
    let err = ((kron - gauss) * half).magnitude();
    (value, err)
}

/// Globally adaptive Gauss–Kronrod quadrature of `f` over `[a, b]`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive_generic(&f, a, b, tol)
}

/// Complex-valued version of [`integrate_adaptive`].
pub fn integrate_adaptive_complex<F>(
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadratureResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    integrate_adaptive_generic(&f, a, b, tol)
}

pub fn integrate_adaptive_generic<T, F>(
    f: &F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadratureResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    tol.validate()?;
    if !(a < b) {
        return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
    }
    let (value, error) = kronrod(f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    let mut frozen_value = T::zero();
    let mut frozen_error = 0.0;
    heap.push(Panel { a, b, value, error });
    let min_width = (b - a) * 1e-13;

    loop {
        let mut total = Accumulator::new(tol.precision);
        total.add(frozen_value);
        let mut err = frozen_error;
        for p in heap.iter() {
            total.add(p.value);
            err += p.error;
        }
        let total = total.value();
        if !total.is_finite_value() {
            return Err(Error::NoConvergence {
                estimate: total.real_part(),
                error_estimate: f64::INFINITY,
                evaluations,
            });
        }
        if err <= tol.target(total.magnitude()) {
            return Ok(QuadratureResult {
                value: total,
                error_estimate: err,
                evaluations,
            });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::NoConvergence {
                estimate: total.real_part(),
                error_estimate: err,
                evaluations,
            });
        };
        if evaluations + 30 > tol.max_evaluations {
            return Err(Error::NoConvergence {
                estimate: total.real_part(),
                error_estimate: err,
                evaluations,
            });
        }
        if worst.b - worst.a < min_width {
            // Cannot be split further; its error stays in the budget.
            frozen_value = frozen_value + worst.value;
            frozen_error += worst.error;
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = kronrod(f, worst.a, mid);
        let (v2, e2) = kronrod(f, mid, worst.b);
        evaluations += 30;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }
}

/// Adaptive quadrature over consecutive panels `[p0,p1], [p1,p2], ...`, each
/// with the share `(p_{k+1}-p_k)/(p_n-p_0)` of the absolute tolerance.
pub fn integrate_adaptive_panels<F>(f: F, breakpoints: &[f64], tol: Tolerance) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let span = breakpoints.last().unwrap_or(&0.0) - breakpoints.first().unwrap_or(&0.0);
    let mut value = Accumulator::new(tol.precision);
    let mut error = 0.0;
    let mut evaluations = 0;
    for w in breakpoints.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let share = Tolerance {
            absolute: tol.absolute * (w[1] - w[0]) / span,
            max_evaluations: tol.max_evaluations.saturating_sub(evaluations).max(30),
            ..tol
        };
        let r = integrate_adaptive(&f, w[0], w[1], share)?;
        value.add(r.value);
        error += r.error_estimate;
        evaluations += r.evaluations;
    }
    Ok(QuadratureResult {
        value: value.value(),
        error_estimate: error,
        evaluations,
    })
}

/// Tanh-sinh quadrature of `f(x)` over `[a, b]`.
///
/// Near the ends `f` sees `x` rounded to the nearest double. When the
/// integrand depends on `b - x` or `x - a`, use
/// [`integrate_endpoint_singular_with`] instead.
pub fn integrate_endpoint_singular<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    tanh_sinh(&|p: Abscissa| f(p.x), a, b, tol)
}

/// Tanh-sinh quadrature with access to accurate endpoint offsets.
pub fn integrate_endpoint_singular_with<F>(
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadratureResult>
where
    F: Fn(Abscissa) -> f64,
{
    tanh_sinh(&f, a, b, tol)
}

/// Complex-valued tanh-sinh quadrature with endpoint offsets.
pub fn integrate_endpoint_singular_complex<F>(
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadratureResult<Complex64>>
where
    F: Fn(Abscissa) -> Complex64,
{
    tanh_sinh(&f, a, b, tol)
}

const TS_MAX_LEVEL: usize = 14;
// sinh(6.1) ~ 223; beyond that the offsets underflow below 1e-300.
const TS_T_MAX: f64 = 6.1;

fn ts_node(t: f64, half: f64) -> (f64, f64, f64) {
    // Returns (weight, offset-from-near-end, offset-from-far-end) for t >= 0,
    // measured in units of the full interval through `half`.
    let u = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * u).exp();
    let near = half * 2.0 * e / (1.0 + e); // half * (1 - tanh u)
    let far = half * 2.0 / (1.0 + e); // half * (1 + tanh u)
    let ch = (FRAC_PI_2 * t.sinh()).cosh();
    let w = FRAC_PI_2 * t.cosh() / (ch * ch);
    (w, near, far)
}

fn tanh_sinh<T, F>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<QuadratureResult<T>>
where
    T: QuadValue,
    F: Fn(Abscissa) -> T,
{
    tol.validate()?;
    if !(a < b) {
        return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    let mut evaluations = 0usize;

    // Sum of f*w over the nodes t = k*h for the given (odd-only) stride.
    let eval_level = |h: f64, odd_only: bool, evals: &mut usize| -> T {
        let mut acc = Accumulator::new(tol.precision);
        let mut k: i64 = if odd_only { 1 } else { 0 };
        let step: i64 = if odd_only { 2 } else { 1 };
        loop {
            let t = k as f64 * h;
            if t > TS_T_MAX {
                break;
            }
            let (w, near, far) = ts_node(t, half);
            if w == 0.0 || near == 0.0 {
                break;
            }
            // Right node: x = b - near.
            let right = Abscissa {
                x: b - near,
                from_start: far,
                to_end: near,
            };
            let fr = f(right);
            *evals += 1;
            if fr.is_finite_value() {
                acc.add(fr * w);
            }
            if k != 0 {
                let left = Abscissa {
                    x: a + near,
                    from_start: near,
                    to_end: far,
                };
                let fl = f(left);
                *evals += 1;
                if fl.is_finite_value() {
                    acc.add(fl * w);
                }
            }
            k += step;
        }
        acc.value()
    };

    let mut h = 1.0;
    let mut sum = eval_level(h, false, &mut evaluations);
    let mut estimate = sum * (h * half);
    let mut prev_diff = f64::INFINITY;
    for level in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let odd = eval_level(h, true, &mut evaluations);
        sum = sum + odd;
        let next = sum * (h * half);
        let diff = (next - estimate).magnitude();
        estimate = next;
        if level >= 3 && diff <= tol.target(estimate.magnitude()) && prev_diff.is_finite() {
            // Doubling the node count roughly squares the error, so the
            // last difference bounds the error of the current estimate.
            return Ok(QuadratureResult {
                value: estimate,
                error_estimate: diff,
                evaluations,
            });
        }
        prev_diff = diff;
        if evaluations > tol.max_evaluations {
            break;
        }
    }
    Err(Error::NoConvergence {
        estimate: estimate.real_part(),
        error_estimate: prev_diff,
        evaluations,
    })
}

/// Both roots of `a r^2 + b r + c`, larger magnitude first.
///
/// The larger root comes from the cancellation-free branch of the quadratic
/// formula and the smaller one from `c / (a r1)`.
pub fn solve_quadratic_stable(a: Complex64, b: Complex64, c: Complex64) -> Result<(Complex64, Complex64)> {
    if a == Complex64::new(0.0, 0.0) {
        return Err(Error::Degenerate("leading coefficient is zero".into()));
    }
    let disc = (b * b - a * c * 4.0).sqrt();
    // Pick the sign that makes |b + sign*disc| large.
    let sign = if (b.conj() * disc).re >= 0.0 { 1.0 } else { -1.0 };
    let q = -(b + disc * sign) * 0.5;
    if q == Complex64::new(0.0, 0.0) {
        return Ok((q, q));
    }
    let r1 = q / a;
    let r2 = c / q;
    if r2.norm() > r1.norm() {
        Ok((r2, r1))
    } else {
        Ok((r1, r2))
    }
}

/// Real roots of a monic-or-not real cubic `c3 x^3 + c2 x^2 + c1 x + c0`,
/// returned as complex numbers, polished by Newton steps.
pub fn cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let roots = polynomial_roots(&[
        Complex64::new(c0, 0.0),
        Complex64::new(c1, 0.0),
        Complex64::new(c2, 0.0),
        Complex64::new(c3, 0.0),
    ]);
    [roots[0], roots[1], roots[2]]
}

/// Roots of `sum coeffs[k] x^k` (lowest degree first) by the Aberth–Ehrlich
/// iteration followed by Newton polishing. Trailing zero coefficients are
/// ignored; the returned vector has length equal to the true degree.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1] == Complex64::new(0.0, 0.0) {
        deg -= 1;
    }
    if deg <= 1 {
        return Vec::new();
    }
    let c = &coeffs[..deg];
    let n = deg - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&v| v / lead).collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = monic[n];
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            dp = dp * x + p;
            p = p * x + monic[k];
        }
        (p, dp)
    };
    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[..n].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let start_r = radius.min(1.0 + monic[0].norm().powf(1.0 / n as f64));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(start_r, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 1e-6 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= step;
        }
    }
    z
}
