//! Mahler measures of two-variable polynomials.
//!
//! For polynomials of degree at most two in `y` the measure reduces, by
//! Jensen's formula in `y`, to a one-dimensional integral over `|x| = 1`:
//!
//! `m(P) = m(P*) + (1/2pi) int_0^{2pi} sum_i max(log|y_i(e^{it})|, 0) dt`.
//!
//! The integrand has kinks where a root crosses the unit circle, square-root
//! behaviour where the two roots collide and logarithmic singularities at the
//! zeros of `P*`. All of those angles are located first and the integral is
//! split there, with tanh-sinh quadrature on each panel.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::numerics::{
    integrate_adaptive, integrate_endpoint_singular, polynomial_roots, solve_quadratic_stable, Accumulator,
    Tolerance,
};
use crate::par::{self, Execution};

/// `sum_{i,j} c[j][i] x^i y^j` with real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePoly {
    /// `coeffs[j]` is the polynomial in `x` multiplying `y^j`, lowest degree
    /// first. The last entry (the leading coefficient `P*`) is nonzero.
    coeffs: Vec<Vec<f64>>,
}

fn trim(mut v: Vec<f64>) -> Vec<f64> {
    while v.last() == Some(&0.0) {
        v.pop();
    }
    v
}

fn horner(c: &[f64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

fn horner_derivative(c: &[f64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &a) in c.iter().enumerate().skip(1).rev() {
        acc = acc * x + a * k as f64;
    }
    acc
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0))
        .collect()
}

impl BivariatePoly {
    /// Builds a polynomial from `coeffs[j][i]`, the coefficient of `x^i y^j`.
    pub fn new(coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        let mut coeffs: Vec<Vec<f64>> = coeffs.into_iter().map(trim).collect();
        while coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Degenerate("zero polynomial".into()));
        }
        Ok(BivariatePoly { coeffs })
    }

    pub fn y_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The polynomial in `x` multiplying `y^j`.
    pub fn y_coefficient(&self, j: usize) -> &[f64] {
        self.coeffs.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `P*(x)`, the leading coefficient in `y`.
    pub fn leading(&self) -> &[f64] {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * y + horner(c, x))
    }

    /// `(dP/dx, dP/dy)` at `(x, y)`.
    pub fn gradient(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let mut px = Complex64::new(0.0, 0.0);
        let mut py = Complex64::new(0.0, 0.0);
        let mut yk = Complex64::new(1.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            px += horner_derivative(c, x) * yk;
            if j + 1 < self.coeffs.len() {
                py += horner(&self.coeffs[j + 1], x) * yk * (j + 1) as f64;
            }
            yk *= y;
        }
        (px, py)
    }

    /// `x^a y^b P(1/x, 1/y)` with the smallest monomial shift that keeps it
    /// a polynomial.
    pub fn reciprocal(&self) -> Self {
        let dx = self.coeffs.iter().map(Vec::len).max().unwrap_or(1) - 1;
        let dy = self.y_degree();
        let mut out = vec![vec![0.0; dx + 1]; dy + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                out[dy - j][dx - i] = v;
            }
        }
        BivariatePoly::new(out).expect("nonzero")
    }

    /// Roots in `y` of `P(x, y)`, ordered by decreasing modulus.
    pub fn y_roots(&self, x: Complex64) -> Vec<Complex64> {
        let c: Vec<Complex64> = self.coeffs.iter().map(|c| horner(c, x)).collect();
        let mut roots = match c.len() {
            1 => Vec::new(),
            2 => vec![-c[0] / c[1]],
            3 => match solve_quadratic_stable(c[2], c[1], c[0]) {
                Ok((r1, r2)) => vec![r1, r2],
                Err(_) if c[1] != Complex64::new(0.0, 0.0) => {
                    vec![Complex64::new(f64::INFINITY, 0.0), -c[0] / c[1]]
                }
                Err(_) => vec![Complex64::new(f64::INFINITY, 0.0); 2],
            },
            _ => polynomial_roots(&c),
        };
        roots.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
        roots
    }

    /// `c1^2 - 4 c2 c0`, the discriminant in `y` of a quadratic.
    pub fn discriminant(&self) -> Option<Vec<f64>> {
        if self.y_degree() != 2 {
            return None;
        }
        let (c0, c1, c2) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        let four_ac: Vec<f64> = poly_mul(c2, c0).into_iter().map(|v| 4.0 * v).collect();
        Some(trim(poly_sub(&poly_mul(c1, c1), &four_ac)))
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            for (i, &v) in c.iter().enumerate().rev() {
                if v == 0.0 {
                    continue;
                }
                let sign = if v < 0.0 { "-" } else if first { "" } else { "+" };
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    (i, 0) => pow("x", i),
                    (0, j) => pow("y", j),
                    (i, j) => format!("{}*{}", pow("x", i), pow("y", j)),
                };
                let abs = v.abs();
                if mono.is_empty() {
                    write!(f, "{sign}{abs}")?;
                } else if abs == 1.0 {
                    write!(f, "{sign}{mono}")?;
                } else {
                    write!(f, "{sign}{abs}*{mono}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}

fn pow(v: &str, k: usize) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}

/// The family polynomial, quadratic in `y`.
pub fn family_poly(spec: FamilySpec) -> BivariatePoly {
    let a = spec.param;
    let coeffs = match spec.family {
        // (x+1)(y+1)(x+y) - a xy
        Family::P => vec![vec![0.0, 1.0, 1.0], vec![1.0, 2.0 - a, 1.0], vec![1.0, 1.0]],
        Family::S => vec![
            vec![0.0, 0.0, 0.0, 0.0, 1.0],
            vec![1.0, a, 2.0 * a, a, 1.0],
            vec![1.0],
        ],
        Family::Q => vec![vec![0.0, 1.0, 1.0, 1.0], vec![0.0, a, a], vec![1.0, 1.0, 1.0]],
        Family::R => vec![
            vec![0.0, 0.0, 1.0, 1.0, 1.0],
            vec![1.0, a, 2.0 * a - 4.0, a, 1.0],
            vec![1.0, 1.0, 1.0],
        ],
    };
    BivariatePoly::new(coeffs).expect("family polynomials are nonzero")
}

/// `m(p) = log|lead| + sum log max(1, |root|)` for `p = sum c[k] x^k`.
///
/// The zero polynomial has measure `-inf`.
pub fn jensen_univariate(coeffs: &[f64]) -> f64 {
    let c = trim(coeffs.to_vec());
    let Some(&lead) = c.last() else {
        return f64::NEG_INFINITY;
    };
    let low = c.iter().position(|&v| v != 0.0).unwrap_or(0);
    let shifted: Vec<Complex64> = c[low..].iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let roots = polynomial_roots(&shifted);
    lead.abs().ln() + roots.iter().map(|r| r.norm().ln().max(0.0)).sum::<f64>()
}

/// Relative band around the unit circle inside which a root counts as "on" it.
const ON_CIRCLE: f64 = 1e-10;
const SAMPLES: usize = 2048;

/// Angles in `[0, pi]` of the zeros of a real polynomial on `|x| = 1`.
/// Per-panel tolerance: proportional to the panel width, but never below an
/// equal split, so that slivers between nearby breakpoints stay attainable.
fn panel_tolerance(tol: Tolerance, width: f64, span: f64, panels: usize) -> Tolerance {
    let share = (width / span).max(1.0 / panels as f64) * 0.5;
    Tolerance {
        absolute: tol.absolute * share,
        ..tol
    }
}

fn circle_zeros(c: &[f64]) -> Vec<f64> {
    let c = trim(c.to_vec());
    let roots = polynomial_roots(&c.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>());
    roots
        .into_iter()
        .filter(|r| (r.norm() - 1.0).abs() < 1e-6)
        .map(|r| r.arg().abs())
        .collect()
}

/// Where each root sits relative to the unit circle: `(outside, on)`.
fn circle_state(p: &BivariatePoly, theta: f64) -> (usize, usize) {
    let roots = p.y_roots(Complex64::from_polar(1.0, theta));
    let out = roots.iter().filter(|r| r.norm() > 1.0 + ON_CIRCLE).count();
    let on = roots.iter().filter(|r| (r.norm() - 1.0).abs() <= ON_CIRCLE).count();
    (out, on)
}

/// Panel boundaries in `[0, pi]` for the Jensen integrand.
pub fn jensen_breakpoints(p: &BivariatePoly) -> Vec<f64> {
    let mut pts = vec![0.0, PI];
    pts.extend(circle_zeros(p.leading()));
    if let Some(d) = p.discriminant() {
        pts.extend(circle_zeros(&d));
    }
    let h = PI / SAMPLES as f64;
    let mut prev = circle_state(p, 0.0);
    for k in 1..=SAMPLES {
        let t = k as f64 * h;
        let s = circle_state(p, t);
        if s != prev {
            let (mut lo, mut hi) = (t - h, t);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if circle_state(p, mid) == prev {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-15 {
                    break;
                }
            }
            pts.push(0.5 * (lo + hi));
        }
        prev = s;
    }
    pts.retain(|t| t.is_finite());
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    pts
}

/// `sum_i max(log|y_i(e^{it})|, 0)`.
pub fn jensen_integrand(p: &BivariatePoly, theta: f64) -> f64 {
    p.y_roots(Complex64::from_polar(1.0, theta))
        .iter()
        .map(|r| r.norm().ln().max(0.0))
        .sum()
}

/// Mahler measure via Jensen's formula in `y`.
///
/// `tol.absolute` bounds the quadrature error of the reported measure.
pub fn mahler_quadratic_y(p: &BivariatePoly, tol: Tolerance) -> Result<f64> {
    if p.y_degree() > 2 {
        return Err(Error::InvalidInput(format!("y-degree {} exceeds 2", p.y_degree())));
    }
    let lead = jensen_univariate(p.leading());
    if p.y_degree() == 0 {
        return Ok(lead);
    }
    let bps = jensen_breakpoints(p);
    let mut acc = Accumulator::new(tol.precision);
    for w in bps.windows(2) {
        let share = panel_tolerance(tol, w[1] - w[0], 1.0, bps.len() - 1);
        let r = integrate_endpoint_singular(|t| jensen_integrand(p, t), w[0], w[1], share)?;
        acc.add(r.value);
    }
    Ok(lead + acc.value() / PI)
}

/// Direct quadrature of `log|P|` over the torus, for cross-checking.
///
/// The outer integral over `|x| = 1` is adaptive Gauss–Kronrod split at
/// [`jensen_breakpoints`] (when the `y`-degree allows it); the inner one is
/// tanh-sinh split at the arguments of the `y`-roots.
pub fn mahler_torus2(p: &BivariatePoly, tol: Tolerance) -> Result<f64> {
    let inner_tol = Tolerance {
        absolute: tol.absolute * 0.05,
        ..tol
    };
    let inner = |theta: f64| -> f64 {
        let x = Complex64::from_polar(1.0, theta);
        let mut cuts: Vec<f64> = p
            .y_roots(x)
            .iter()
            .filter(|r| r.is_finite())
            .map(|r| r.arg().rem_euclid(2.0 * PI))
            .collect();
        cuts.push(0.0);
        cuts.push(2.0 * PI);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        let mut s = 0.0;
        for w in cuts.windows(2) {
            let f = |phi: f64| p.eval(x, Complex64::from_polar(1.0, phi)).norm().ln();
            match integrate_endpoint_singular(f, w[0], w[1], inner_tol) {
                Ok(r) => s += r.value,
                Err(Error::NoConvergence { estimate, .. }) => s += estimate,
                Err(_) => return f64::NAN,
            }
        }
        s / (2.0 * PI)
    };
    let bps = if p.y_degree() <= 2 {
        jensen_breakpoints(p)
    } else {
        vec![0.0, PI]
    };
    let mut total = 0.0;
    for w in bps.windows(2) {
        let share = panel_tolerance(tol, w[1] - w[0], 1.0, bps.len() - 1);
        total += integrate_adaptive(inner, w[0], w[1], share)?.value;
    }
    Ok(total / PI)
}

/// `(value, derivative)` of one coordinate along a path.
pub type PathFn<'a> = dyn Fn(f64) -> (Complex64, Complex64) + Sync + 'a;

const PATH_PROBES: usize = 64;

/// Looks for zeros of `f` on `[a, b]`: probes on a grid and, wherever the
/// first-order model allows a zero within one grid step, minimises `|f|`
/// locally.
fn check_nonvanishing<F>(f: &F, a: f64, b: f64, name: &str) -> Result<()>
where
    F: Fn(f64) -> (Complex64, Complex64),
{
    let h = (b - a) / PATH_PROBES as f64;
    for k in 0..=PATH_PROBES {
        let t = a + h * k as f64;
        let (v, d) = f(t);
        if !v.is_finite() {
            if k == 0 || k == PATH_PROBES {
                continue;
            }
            return Err(Error::SingularPath(format!("{name} is not finite at t = {t}")));
        }
        let scale = d.norm() * h;
        if v.norm() > scale {
            continue;
        }
        let (mut lo, mut hi) = ((t - h).max(a), (t + h).min(b));
        for _ in 0..100 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(m1).0.norm() < f(m2).0.norm() {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let tm = 0.5 * (lo + hi);
        let (vm, dm) = f(tm);
        if vm.norm() <= 1e-6 * dm.norm() * h {
            return Err(Error::SingularPath(format!("{name} vanishes near t = {tm}")));
        }
    }
    Ok(())
}

/// `int eta(x, y)` with `eta = log|x| d arg y - log|y| d arg x` along a path
/// parametrised on consecutive panels of `partition`.
pub fn eta_path_integral<FX, FY>(x: FX, y: FY, partition: &[f64], tol: Tolerance) -> Result<f64>
where
    FX: Fn(f64) -> (Complex64, Complex64),
    FY: Fn(f64) -> (Complex64, Complex64),
{
    if partition.len() < 2 {
        return Err(Error::InvalidInput("a path needs at least one panel".into()));
    }
    let span = partition[partition.len() - 1] - partition[0];
    let integrand = |t: f64| -> f64 {
        let (xv, dx) = x(t);
        let (yv, dy) = y(t);
        xv.norm().ln() * (dy / yv).im - yv.norm().ln() * (dx / xv).im
    };
    let mut acc = Accumulator::new(tol.precision);
    for w in partition.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            return Err(Error::InvalidInput("partition must be increasing".into()));
        }
        check_nonvanishing(&x, a, b, "x")?;
        check_nonvanishing(&y, a, b, "y")?;
        let share = panel_tolerance(tol, b - a, span, partition.len() - 1);
        let r = integrate_endpoint_singular(integrand, a, b, share)?;
        if !r.value.is_finite() {
            return Err(Error::SingularPath(format!("non-finite integral on [{a}, {b}]")));
        }
        acc.add(r.value);
    }
    Ok(acc.value())
}

/// `int eta(x, y_i)` over the arcs of `|x| = 1` where `|y_i| >= 1`, summed over
/// the branches. Equals `-2 pi (m(P) - m(P*))`.
pub fn jensen_path_eta(p: &BivariatePoly, tol: Tolerance) -> Result<f64> {
    let half = jensen_breakpoints(p);
    let mut partition: Vec<f64> = half.iter().rev().map(|t| -t).collect();
    partition.extend(half.iter().skip(1));
    partition.dedup();
    let mut total = 0.0;
    for w in partition.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let outside = p
            .y_roots(Complex64::from_polar(1.0, mid))
            .iter()
            .filter(|r| r.norm() > 1.0)
            .count();
        for branch in 0..outside {
            let xf = |t: f64| {
                let x = Complex64::from_polar(1.0, t);
                (x, x * Complex64::i())
            };
            let yf = |t: f64| {
                let (x, dx) = xf(t);
                let y = p.y_roots(x)[branch];
                let (px, py) = p.gradient(x, y);
                (y, -px * dx / py)
            };
            total += eta_path_integral(xf, yf, w, tol)?;
        }
    }
    Ok(total)
}

/// One entry of a parameter sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureSample {
    pub spec: FamilySpec,
    pub measure: Result<f64>,
}

/// `m(family_poly(spec))` for every spec, in input order.
pub fn mahler_sweep(specs: &[FamilySpec], tol: Tolerance, exec: Execution) -> Vec<MeasureSample> {
    par::map(specs, exec, |&spec| MeasureSample {
        spec,
        measure: mahler_quadratic_y(&family_poly(spec), tol),
    })
}
