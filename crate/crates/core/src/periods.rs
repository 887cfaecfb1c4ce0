//! Real cycle integrals attached to the families and the substitutions that
//! relate them.
//!
//! Every integral here is real and positive; the `+-i` prefactors carried by
//! the holomorphic differential are dropped. Square-root endpoint
//! singularities are handled by tanh-sinh quadrature with factorised
//! integrands, so the vanishing factor is always computed from an accurate
//! endpoint offset. Infinite ranges are mapped to `[0, 1)` by
//! `u = u0 + rho s/(1-s)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elliptic::{family_models, period_lattice};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::numerics::{integrate_endpoint_singular_with, Abscissa, QuadratureResult, Tolerance};
use crate::report::CheckRecord;

/// Parameter ranges on which the cycle integrals are defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `0 <= a <= 4` (families `P`, `S`).
    Small,
    /// `a < -1` (families `P`, `S`).
    Negative,
    /// `a >= 4` (family `Q`) or `b >= 6` (family `R`).
    Large,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleIntegral {
    pub family: Family,
    pub param: f64,
    pub regime: Regime,
    /// Closed form of the integrand, in the variable `t`.
    pub integrand: String,
    pub lower: f64,
    pub upper: f64,
    /// Multiplier in front of the integral (2 for `P` and `S`, which integrate
    /// over half a circle).
    pub factor: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn quad<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadratureResult>
where
    F: Fn(Abscissa) -> f64,
{
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    integrate_endpoint_singular_with(f, a, b, tol)
}

fn sqrt_disc(a: f64) -> f64 {
    (a * a - 8.0 * a).sqrt()
}

fn unsupported(what: &str, param: f64) -> Error {
    Error::UnsupportedRegime {
        what: what.to_string(),
        param,
    }
}

/// `int dt / sqrt(t(1-t)((a-4t)^2-16t))` over `[0, upper]`, with `upper` either
/// the smaller root `(2+a-2 sqrt(a+1))/4` (for `0 < a < 8`) or `1` (`a < -1`).
pub fn integral_p(a: f64, to_root: bool, tol: Tolerance) -> Result<QuadratureResult> {
    if to_root {
        if !(a >= 0.0) {
            return Err(unsupported("P integral to the first root", a));
        }
        let s = (a + 1.0).sqrt();
        let r1 = (2.0 + a - 2.0 * s) / 4.0;
        let r2 = (2.0 + a + 2.0 * s) / 4.0;
        quad(
            |p: Abscissa| 1.0 / (p.from_start * (1.0 - p.x) * 16.0 * p.to_end * (r2 - p.x)).sqrt(),
            0.0,
            r1,
            tol,
        )
    } else {
        if !(a < -1.0) {
            return Err(unsupported("P integral over [0,1]", a));
        }
        quad(
            |p: Abscissa| {
                let t = p.x;
                let q = (a - 4.0 * t).powi(2) - 16.0 * t;
                1.0 / (p.from_start * p.to_end * q).sqrt()
            },
            0.0,
            1.0,
            tol,
        )
    }
}

/// Lower limit of the `S` integral.
pub fn s_lower(a: f64) -> Result<f64> {
    if a > 0.0 && a < 8.0 || a == 0.0 {
        Ok((2.0 - a) / 2.0)
    } else if a < -1.0 {
        Ok((-a - sqrt_disc(a)) / 4.0)
    } else {
        Err(unsupported("S integral", a))
    }
}

/// `int dt / sqrt|(1-t)(2t+a-2)(2t^2+at+a)|` from [`s_lower`] to 1.
pub fn integral_s(a: f64, tol: Tolerance) -> Result<QuadratureResult> {
    let lo = s_lower(a)?;
    if a >= 0.0 {
        quad(
            |p: Abscissa| {
                let t = p.x;
                1.0 / (p.to_end * 2.0 * p.from_start * (2.0 * t * t + a * t + a)).sqrt()
            },
            lo,
            1.0,
            tol,
        )
    } else {
        let other = (-a + sqrt_disc(a)) / 4.0;
        quad(
            |p: Abscissa| {
                let t = p.x;
                let v = p.to_end * (2.0 * t + a - 2.0) * 2.0 * p.from_start * (t - other);
                1.0 / v.abs().sqrt()
            },
            lo,
            1.0,
            tol,
        )
    }
}

/// Roots `t0 <= t1` of `a^2 t - (4t-1)^2`.
fn q_roots(a: f64) -> (f64, f64) {
    let s = a * (a * a + 16.0).sqrt();
    ((8.0 + a * a - s) / 32.0, (8.0 + a * a + s) / 32.0)
}

/// `int dt / sqrt((1-t)(a^2 t-(4t-1)^2))` over `[t0, 1]`, `a >= 4`.
pub fn integral_q(a: f64, tol: Tolerance) -> Result<QuadratureResult> {
    if !(a >= 4.0) {
        return Err(unsupported("Q integral", a));
    }
    let (t0, t1) = q_roots(a);
    quad(
        |p: Abscissa| 1.0 / (p.to_end * 16.0 * p.from_start * (t1 - p.x)).sqrt(),
        t0,
        1.0,
        tol,
    )
}

/// Roots of `2t^2 + (b+2)t + (b-2)`, larger first.
fn r_roots(b: f64) -> (f64, f64) {
    let s = (b * b - 4.0 * b + 20.0).sqrt();
    ((-(b + 2.0) + s) / 4.0, (-(b + 2.0) - s) / 4.0)
}

/// `int dt / sqrt((1-t)((b-4)+2t)(2t^2+(b+2)t+(b-2)))` over `[t0, 1]`, `b >= 6`.
pub fn integral_r(b: f64, tol: Tolerance) -> Result<QuadratureResult> {
    if !(b >= 6.0) {
        return Err(unsupported("R integral", b));
    }
    let (t0, t0b) = r_roots(b);
    quad(
        |p: Abscissa| {
            let t = p.x;
            1.0 / (p.to_end * (b - 4.0 + 2.0 * t) * 2.0 * p.from_start * (t - t0b)).sqrt()
        },
        t0,
        1.0,
        tol,
    )
}

/// Roots `(s0, w0) = ((a-4 -+ sqrt(a^2-8a)) / (2a))` of `a^2 s^2 + a(4-a)s + 4`.
fn s_form_roots(a: f64) -> (f64, f64) {
    let d = sqrt_disc(a);
    ((a - 4.0 - d) / (2.0 * a), (a - 4.0 + d) / (2.0 * a))
}

/// Which piece of `int ds / sqrt|s(1-s)(a^2 s^2 + a(4-a)s + 4)|` to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SForm {
    /// `[0, 1]`, for `0 < a < 8`.
    Unit,
    /// `[1, s0]`, for `a < -1`.
    BeyondOne,
    /// `[0, w0]`, for `a < -1`.
    ToW0,
}

pub fn integral_s_form(a: f64, piece: SForm, tol: Tolerance) -> Result<QuadratureResult> {
    let quartic = |s: f64| a * a * s * s + a * (4.0 - a) * s + 4.0;
    match piece {
        SForm::Unit => {
            if !(a > 0.0 && a < 8.0) {
                return Err(unsupported("s-integral over [0,1]", a));
            }
            quad(
                |p: Abscissa| 1.0 / (p.from_start * p.to_end * quartic(p.x)).sqrt(),
                0.0,
                1.0,
                tol,
            )
        }
        SForm::BeyondOne => {
            if !(a < -1.0) {
                return Err(unsupported("s-integral over [1,s0]", a));
            }
            let (s0, w0) = s_form_roots(a);
            quad(
                |p: Abscissa| {
                    let s = p.x;
                    1.0 / (s * p.from_start * a * a * p.to_end * (s - w0)).abs().sqrt()
                },
                1.0,
                s0,
                tol,
            )
        }
        SForm::ToW0 => {
            if !(a < -1.0) {
                return Err(unsupported("s-integral over [0,w0]", a));
            }
            let (s0, w0) = s_form_roots(a);
            quad(
                |p: Abscissa| {
                    let s = p.x;
                    1.0 / (p.from_start * (1.0 - s) * a * a * (s0 - s) * p.to_end).abs().sqrt()
                },
                0.0,
                w0,
                tol,
            )
        }
    }
}

/// `k = a^2/4 - a - 2`, the middle coefficient shared by the two Weierstrass
/// forms linked by the 2-isogeny.
fn isogeny_k(a: f64) -> f64 {
    a * a / 4.0 - a - 2.0
}

/// `int_0^inf du / sqrt(u(u^2 + 2ku + a^3(a-8)/16))`.
pub fn integral_u_form(a: f64, tol: Tolerance) -> Result<QuadratureResult> {
    if !(a < -1.0) {
        return Err(unsupported("u-integral", a));
    }
    let k = isogeny_k(a);
    let c = a.powi(3) * (a - 8.0) / 16.0;
    let rho = 1.0 + k.abs() + c.abs().sqrt();
    // u = rho s / (1 - s): the integrand is rho tau^{-1/2} / sqrt(rho s (rho^2 s^2 + 2k rho s tau + c tau^2)).
    quad(
        |p: Abscissa| {
            let (s, tau) = (p.from_start, p.to_end);
            let inner = rho * rho * s * s + 2.0 * k * rho * s * tau + c * tau * tau;
            rho / (tau.sqrt() * (rho * s * inner).sqrt())
        },
        0.0,
        1.0,
        tol,
    )
}

/// `v0 = (a^2 - 4a - 8 - a sqrt(a^2-8a)) / 8`, the larger root of `v^2 - kv + a + 1`.
pub fn v0(a: f64) -> f64 {
    (a * a - 4.0 * a - 8.0 - a * sqrt_disc(a)) / 8.0
}

/// `int_{v0}^inf dv / sqrt(v(v^2 - kv + a + 1))`.
pub fn integral_v_form(a: f64, tol: Tolerance) -> Result<QuadratureResult> {
    if !(a < -1.0) {
        return Err(unsupported("v-integral", a));
    }
    let k = isogeny_k(a);
    let r0 = v0(a);
    let r1 = k - r0;
    let gap = r0 - r1;
    let rho = 1.0 + r0.abs();
    quad(
        |p: Abscissa| {
            let (s, tau) = (p.from_start, p.to_end);
            let prod = rho * s * (r0 * tau + rho * s) * (gap * tau + rho * s);
            rho / (tau.sqrt() * prod.sqrt())
        },
        0.0,
        1.0,
        tol,
    )
}

/// The cycle integral of a family in the regime that contains `param`.
pub fn cycle_integral(family: Family, param: f64, tol: Tolerance) -> Result<CycleIntegral> {
    let a = param;
    let (regime, integrand, lower, upper, factor, r) = match family {
        Family::P if (0.0..=4.0).contains(&a) => {
            let s = (a + 1.0).sqrt();
            (
                Regime::Small,
                "1/sqrt(t(1-t)((a-4t)^2-16t))",
                0.0,
                (2.0 + a - 2.0 * s) / 4.0,
                2.0,
                integral_p(a, true, tol)?,
            )
        }
        Family::P if a < -1.0 => (
            Regime::Negative,
            "1/sqrt(t(1-t)((a-4t)^2-16t))",
            0.0,
            1.0,
            2.0,
            integral_p(a, false, tol)?,
        ),
        Family::S if (0.0..=4.0).contains(&a) || a < -1.0 => (
            if a < 0.0 { Regime::Negative } else { Regime::Small },
            "1/sqrt|(1-t)(2t+a-2)(2t^2+at+a)|",
            s_lower(a)?,
            1.0,
            2.0,
            integral_s(a, tol)?,
        ),
        Family::Q if a >= 4.0 => (
            Regime::Large,
            "1/sqrt((1-t)(a^2 t-(4t-1)^2))",
            q_roots(a).0,
            1.0,
            1.0,
            integral_q(a, tol)?,
        ),
        Family::R if a >= 6.0 => (
            Regime::Large,
            "1/sqrt((1-t)((b-4)+2t)(2t^2+(b+2)t+(b-2)))",
            r_roots(a).0,
            1.0,
            1.0,
            integral_r(a, tol)?,
        ),
        _ => return Err(unsupported(&format!("cycle integral of family {family}"), a)),
    };
    Ok(CycleIntegral {
        family,
        param,
        regime,
        integrand: integrand.to_string(),
        lower,
        upper,
        factor,
        value: factor * r.value,
        error_estimate: factor * r.error_estimate,
        evaluations: r.evaluations,
    })
}

/// The period identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodIdentity {
    /// `2 int_P[0, r1] = int_S` for `0 < a < 8`.
    SmallParameter,
    /// `int_P[0, 1] = int_S` for `a < -1`.
    NegativeParameter,
    /// `int_Q(a) = int_R(a + 2)` for `a >= 4`.
    QR,
}

impl fmt::Display for PeriodIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeriodIdentity::SmallParameter => "0a4",
            PeriodIdentity::NegativeParameter => "a-1",
            PeriodIdentity::QR => "sec4",
        })
    }
}

impl FromStr for PeriodIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0a4" => Ok(PeriodIdentity::SmallParameter),
            "a-1" => Ok(PeriodIdentity::NegativeParameter),
            "sec4" | "qr" => Ok(PeriodIdentity::QR),
            other => Err(Error::InvalidInput(format!("unknown period identity `{other}`"))),
        }
    }
}

fn inner_tol(tol: f64) -> Tolerance {
    Tolerance::absolute((tol * 1e-2).max(1e-14))
}

/// Both sides of a period identity by independent quadratures.
pub fn verify_period_identity(which: PeriodIdentity, param: f64, tol: f64) -> Result<CheckRecord> {
    let qt = inner_tol(tol);
    let a = param;
    let (lhs, rhs) = match which {
        PeriodIdentity::SmallParameter => {
            if !(a > 0.0 && a < 8.0) {
                return Err(unsupported("identity 0a4", a));
            }
            (2.0 * integral_p(a, true, qt)?.value, integral_s(a, qt)?.value)
        }
        PeriodIdentity::NegativeParameter => {
            if !(a < -1.0) {
                return Err(unsupported("identity a-1", a));
            }
            (integral_p(a, false, qt)?.value, integral_s(a, qt)?.value)
        }
        PeriodIdentity::QR => {
            if !(a >= 4.0) {
                return Err(unsupported("identity sec4", a));
            }
            (integral_q(a, qt)?.value, integral_r(a + 2.0, qt)?.value)
        }
    };
    Ok(CheckRecord::absolute(format!("{which}@{a}"), lhs, rhs, tol))
}

/// The substitutions used to prove the period identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapId {
    /// `t = (a s - a + 2)/2`.
    Affine,
    /// `s = (1 - w)/(1 + a w)`.
    Involution,
    /// `t = 1/(1 + 4u/a^2)`.
    FirstSub,
    /// `w = 1/(1 + v)`.
    SecondSub,
    /// `u = v - k + (a+1)/v`, the degree-2 isogeny.
    Isogeny,
    /// `b = -8/a`.
    Rescaling,
    /// `t = ((a+1)s + a - 1)/(2(2s + a - 2))`.
    QR,
}

impl MapId {
    pub const ALL: [MapId; 7] = [
        MapId::Affine,
        MapId::Involution,
        MapId::FirstSub,
        MapId::SecondSub,
        MapId::Isogeny,
        MapId::Rescaling,
        MapId::QR,
    ];
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapId::Affine => "affine",
            MapId::Involution => "involution",
            MapId::FirstSub => "first",
            MapId::SecondSub => "second",
            MapId::Isogeny => "isogeny",
            MapId::Rescaling => "rescaling",
            MapId::QR => "sec42",
        })
    }
}

impl FromStr for MapId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MapId::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown substitution `{s}`")))
    }
}

/// `s = (1 - w)/(1 + a w)`.
pub fn involution(a: f64, w: f64) -> Result<f64> {
    let den = 1.0 + a * w;
    if den == 0.0 {
        return Err(Error::Degenerate(format!("involution undefined at w = {w}")));
    }
    Ok((1.0 - w) / den)
}

/// `u = v - k + (a + 1)/v`.
pub fn isogeny_map(a: f64, v: f64) -> Result<f64> {
    if v == 0.0 {
        return Err(Error::Degenerate("isogeny undefined at v = 0".into()));
    }
    Ok(v - isogeny_k(a) + (a + 1.0) / v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChangeOfVariableReport {
    pub map: MapId,
    pub param: f64,
    /// The integral in the original variable.
    pub original: f64,
    /// The integral after substitution, over the mapped limits.
    pub mapped: f64,
    /// Largest mismatch between a mapped limit and the stated original limit.
    pub endpoint_residual: f64,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ChangeOfVariableReport {
    pub fn record(&self) -> CheckRecord {
        CheckRecord::with_residual(
            format!("{}@{}", self.map, self.param),
            self.original,
            self.mapped,
            self.residual.max(self.endpoint_residual),
            self.tol,
        )
    }
}

/// Checks one substitution: the original and transformed integrals are
/// computed separately and the limits are pushed through the map.
pub fn change_of_variable_check(map: MapId, param: f64, tol: f64) -> Result<ChangeOfVariableReport> {
    let a = param;
    let qt = inner_tol(tol);
    let (original, mapped, endpoint_residual) = match map {
        MapId::Affine => {
            if a == 0.0 {
                return Err(Error::Degenerate("t = (a s - a + 2)/2 is constant at a = 0".into()));
            }
            let t = |s: f64| (a * s - a + 2.0) / 2.0;
            let orig = integral_s(a, qt)?.value;
            if a > 0.0 {
                let mapped = integral_s_form(a, SForm::Unit, qt)?.value;
                let ends = (t(0.0) - s_lower(a)?).abs().max((t(1.0) - 1.0).abs());
                (orig, mapped, ends)
            } else {
                let mapped = integral_s_form(a, SForm::BeyondOne, qt)?.value;
                let (s0, _) = s_form_roots(a);
                let ends = (t(s0) - s_lower(a)?).abs().max((t(1.0) - 1.0).abs());
                (orig, mapped, ends)
            }
        }
        MapId::Involution => {
            let orig = integral_s_form(a, SForm::BeyondOne, qt)?.value;
            let mapped = integral_s_form(a, SForm::ToW0, qt)?.value;
            let (s0, w0) = s_form_roots(a);
            let ends = (involution(a, 0.0)? - 1.0).abs().max((involution(a, w0)? - s0).abs());
            (orig, mapped, ends)
        }
        MapId::FirstSub => {
            let orig = integral_p(a, false, qt)?.value;
            let mapped = 0.5 * integral_u_form(a, qt)?.value;
            let t = |u: f64| 1.0 / (1.0 + 4.0 * u / (a * a));
            (orig, mapped, (t(0.0) - 1.0).abs().max(t(f64::INFINITY)))
        }
        MapId::SecondSub => {
            let orig = integral_s_form(a, SForm::ToW0, qt)?.value;
            let mapped = 0.5 * integral_v_form(a, qt)?.value;
            let (_, w0) = s_form_roots(a);
            let w = |v: f64| 1.0 / (1.0 + v);
            (orig, mapped, (w(v0(a)) - w0).abs().max(w(f64::INFINITY)))
        }
        MapId::Isogeny => {
            let orig = integral_u_form(a, qt)?.value;
            let mapped = integral_v_form(a, qt)?.value;
            let end = isogeny_map(a, v0(a))?.abs();
            (orig, mapped, end / (1.0 + v0(a).abs()))
        }
        MapId::Rescaling => {
            if !(a < -1.0) {
                return Err(unsupported("rescaling b = -8/a", a));
            }
            let b = -8.0 / a;
            let direct = integral_p(a, false, qt)?.value;
            let s_form = b.abs() / 4.0 * integral_s_form(b, SForm::Unit, qt)?.value;
            let doubled = b.abs() / 4.0 * 2.0 * integral_p(b, true, qt)?.value;
            let residual = (direct - s_form).abs().max((s_form - doubled).abs());
            return Ok(ChangeOfVariableReport {
                map,
                param,
                original: direct,
                mapped: doubled,
                endpoint_residual: 0.0,
                residual,
                tol,
                pass: residual < tol,
            });
        }
        MapId::QR => {
            if !(a >= 4.0) {
                return Err(unsupported("substitution sec42", a));
            }
            let t = |s: f64| ((a + 1.0) * s + a - 1.0) / (2.0 * (2.0 * s + a - 2.0));
            let orig = integral_q(a, qt)?.value;
            let mapped = integral_r(a + 2.0, qt)?.value;
            let s0 = r_roots(a + 2.0).0;
            let ends = (t(s0) - q_roots(a).0).abs().max((t(1.0) - 1.0).abs());
            (orig, mapped, ends)
        }
    };
    let residual = (original - mapped).abs();
    Ok(ChangeOfVariableReport {
        map,
        param,
        original,
        mapped,
        endpoint_residual,
        residual,
        tol,
        pass: residual < tol && endpoint_residual < 1e-10,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalityReport {
    pub family: Family,
    pub param: f64,
    pub cycle: f64,
    /// Imaginary part of the second lattice generator of the family's model.
    pub period: f64,
    pub ratio: f64,
    pub numerator: i64,
    pub denominator: i64,
    pub distance: f64,
}

/// Nearest `p/q` with `1 <= q <= max_den`, smallest denominator on ties.
pub fn nearest_rational(x: f64, max_den: i64) -> (i64, i64, f64) {
    let mut best = (0, 1, f64::INFINITY);
    for q in 1..=max_den {
        let p = (x * q as f64).round() as i64;
        let d = (x - p as f64 / q as f64).abs();
        if d < best.2 - 1e-15 {
            best = (p, q, d);
        }
    }
    best
}

/// Compares the cycle integral with the imaginary period of the family's
/// Weierstrass model and reports the nearest rational with denominator at
/// most 4.
pub fn cycle_vs_lattice(family: Family, param: f64, tol: Tolerance) -> Result<RationalityReport> {
    let cycle = cycle_integral(family, param, tol)?;
    let model = family_models(family, param)?;
    let lattice = period_lattice(&model.curve)?;
    let period = lattice.omega2.im.abs();
    let ratio = cycle.value / period;
    let (numerator, denominator, distance) = nearest_rational(ratio, 4);
    Ok(RationalityReport {
        family,
        param,
        cycle: cycle.value,
        period,
        ratio,
        numerator,
        denominator,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::absolute(1e-13)
    }

    #[test]
    fn limits_examples() {
        let p = cycle_integral(Family::P, 3.0, tol()).unwrap();
        assert!((p.upper - 0.25).abs() < 1e-15 && p.lower == 0.0);
        let s = cycle_integral(Family::S, 2.0, tol()).unwrap();
        assert_eq!((s.lower, s.upper), (0.0, 1.0));
        assert!(matches!(
            cycle_integral(Family::Q, 1.0, tol()),
            Err(Error::UnsupportedRegime { .. })
        ));
        assert!(matches!(
            cycle_integral(Family::P, -0.5, tol()),
            Err(Error::UnsupportedRegime { .. })
        ));
    }

    #[test]
    fn affine_endpoints() {
        let t = |s: f64| (3.0 * s - 3.0 + 2.0) / 2.0;
        assert_eq!(t(1.0), 1.0);
        assert_eq!(t(0.0), -0.5);
    }

    #[test]
    fn negative_p_equals_s() {
        let p = cycle_integral(Family::P, -2.0, tol()).unwrap();
        let s = cycle_integral(Family::S, -2.0, tol()).unwrap();
        assert!((p.value - s.value).abs() < 1e-10, "{} {}", p.value, s.value);
    }

    #[test]
    fn nearest_rational_prefers_small_denominators() {
        assert_eq!(nearest_rational(0.5, 4), (1, 2, 0.0));
        assert_eq!(nearest_rational(1.0, 4), (1, 1, 0.0));
        let (p, q, _) = nearest_rational(0.74, 4);
        assert_eq!((p, q), (3, 4));
    }

    #[test]
    fn involution_is_an_involution() {
        for a in [-1.5, -2.0, -7.0] {
            for k in 0..=10 {
                let w = k as f64 / 10.0 * s_form_roots(a).1;
                let back = involution(a, involution(a, w).unwrap()).unwrap();
                assert!((back - w).abs() < 1e-12);
            }
        }
    }
}
