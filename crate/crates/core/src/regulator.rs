//! The regulator side: `D^E` on diamonds of the families versus `2π m`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dilogarithm::elliptic_dilog_divisor;
use crate::divisors::{published, Chain, FormalDivisor, PointEmbedding};
use crate::error::Result;
use crate::mahler::{family_poly, mahler_quadratic_y};
use crate::numerics::Tolerance;
use crate::report::CheckRecord;
use crate::{Family, FamilySpec};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegulatorSample {
    pub alpha: f64,
    /// `2π m(P_α)`.
    pub two_pi_m: f64,
    /// `D^E(-6(P) - 6(2P))` on `E_α`.
    pub elliptic_dilog: f64,
    /// `2π m(P_α) / |D^E(...)|`.
    pub ratio: f64,
}

/// Evaluate both sides of `2π m(P_α) = |D^E((x)<>(y))|`.
pub fn regulator_sample(alpha: f64, tol: Tolerance) -> Result<RegulatorSample> {
    let e = PointEmbedding::deuring(alpha)?;
    let d = FormalDivisor::parse(&e.group, published::XY)?;
    let de = elliptic_dilog_divisor(&e, &d, tol)?;
    let m = mahler_quadratic_y(&family_poly(FamilySpec::new(Family::P, alpha)), tol)?;
    let two_pi_m = 2.0 * PI * m;
    Ok(RegulatorSample {
        alpha,
        two_pi_m,
        elliptic_dilog: de,
        ratio: two_pi_m / de.abs(),
    })
}

/// `|D^E((f)<>(1-f))|` for the correction element of a chain.
///
/// For [`Chain::SFamily`] `param` is `α` of `E_α`; for [`Chain::QRFamily`]
/// it is the `R` parameter `b` and the curve is `F_{b-2}`.
pub fn steinberg_residual(chain: Chain, param: f64, threshold: f64, tol: Tolerance) -> Result<CheckRecord> {
    let (e, text, name) = match chain {
        Chain::SFamily => (PointEmbedding::deuring(param)?, published::STEINBERG_S, "steinberg E"),
        Chain::QRFamily => (PointEmbedding::f_model(param - 2.0)?, published::STEINBERG_R, "steinberg F"),
    };
    let d = FormalDivisor::parse(&e.group, text)?;
    let v = elliptic_dilog_divisor(&e, &d, tol)?;
    Ok(CheckRecord::absolute(format!("{name} param={param}"), v, 0.0, threshold))
}
