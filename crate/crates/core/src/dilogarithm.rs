//! The dilogarithm `Li2`, the Bloch–Wigner function `D` and the elliptic
//! dilogarithm `D^E(q; z) = sum_n D(q^n z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::divisors::{FormalDivisor, PointEmbedding};
use crate::error::{Error, Result};
use crate::numerics::Tolerance;

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2k} / (2k+1)!` for `k = 1..=22`.
const BERNOULLI_COEFFS: [f64; 22] = [
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.315975652702203e-26,
    -1.740845657234001e-27,
    4.1576356446139e-29,
    -9.962148488284622e-31,
    2.3940344248961652e-32,
    -5.76834735536739e-34,
    1.393179479647008e-35,
    -3.3721219654850894e-37,
];

/// Maximum of `|D|` on the plane, attained at `e^{i pi/3}`.
pub const BLOCH_WIGNER_MAX: f64 = 1.014_941_606_409_653_6;

/// `Li2(z) = sum u^{n+1} B_n / (n+1)!` with `u = -log(1-z)`, valid for
/// `|u| < 2 pi`; used on the region `|z| <= 1, Re z <= 1/2`.
fn li2_core(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut sum = u - u2 * 0.25;
    let mut pow = u * u2;
    for &c in BERNOULLI_COEFFS.iter() {
        let term = pow * c;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        pow *= u2;
    }
    sum
}

fn li2_unit_disk(z: Complex64) -> Complex64 {
    if z.re > 0.5 {
        let w = Complex64::new(1.0, 0.0) - z;
        if w.norm() == 0.0 {
            return Complex64::new(PI2_6, 0.0);
        }
        Complex64::new(PI2_6, 0.0) - z.ln() * w.ln() - li2_core(w)
    } else {
        li2_core(z)
    }
}

/// Principal branch of the dilogarithm. On the cut `(1, inf)` the value is the
/// limit from the lower half-plane.
pub fn li2(z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.norm() <= 1.0 {
        return li2_unit_disk(z);
    }
    if z.im == 0.0 && z.re > 1.0 {
        let x = z.re;
        let lx = x.ln();
        let re = PI * PI / 3.0 - 0.5 * lx * lx - li2_unit_disk(Complex64::new(1.0 / x, 0.0)).re;
        return Complex64::new(re, -PI * lx);
    }
    // Li2(z) + Li2(1/z) = -pi^2/6 - log(-z)^2 / 2 off [0, inf).
    let l = (-z).ln();
    Complex64::new(-PI2_6, 0.0) - l * l * 0.5 - li2_unit_disk(z.inv())
}

/// Bloch–Wigner dilogarithm `D(z) = Im Li2(z) + arg(1-z) log|z|`.
///
/// `D` vanishes on the real line, so real inputs (including 0 and 1)
/// return exactly 0.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return 0.0;
    }
    // Evaluate inside the unit disk to keep Li2 on its well-conditioned side.
    if z.norm_sqr() > 1.0 {
        return -bloch_wigner(z.inv());
    }
    li2(z).im + (Complex64::new(1.0, 0.0) - z).arg() * z.norm().ln()
}

/// A point of `C^x / q^Z`, stored with `|q| < |z| <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QPoint {
    q: Complex64,
    z: Complex64,
}

impl QPoint {
    pub fn new(q: Complex64, z: Complex64) -> Result<Self> {
        let aq = q.norm();
        if !(aq > 0.0) || !aq.is_finite() {
            return Err(Error::InvalidInput(format!("lattice parameter q = {q} must be nonzero")));
        }
        if aq >= 1.0 - 1e-12 {
            return Err(Error::IllConditionedLattice(aq));
        }
        if !(z.norm() > 0.0) || !z.is_finite() {
            return Err(Error::InvalidInput(format!("point z = {z} must be finite and nonzero")));
        }
        Ok(QPoint { q, z: normalize(q, z) })
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }
}

/// Multiplies `z` by a power of `q` so that `|q| < |z| <= 1`.
pub fn normalize(q: Complex64, z: Complex64) -> Complex64 {
    let lq = q.norm().ln();
    let k = (z.norm().ln() / lq).floor();
    let mut w = z * q.powf(-k);
    let aq = q.norm();
    for _ in 0..4 {
        if w.norm() > 1.0 {
            w *= q;
        } else if w.norm() <= aq {
            w /= q;
        } else {
            break;
        }
    }
    w
}

/// Crude but safe bound for `|D(w)|`, used only to stop the lattice sum.
fn term_bound(w: f64) -> f64 {
    if w >= 0.5 {
        BLOCH_WIGNER_MAX
    } else {
        (2.0 * w * (1.0 + w.ln().abs())).min(BLOCH_WIGNER_MAX)
    }
}

/// Elliptic dilogarithm `D^E(q; z) = sum_{n in Z} D(q^n z)`.
///
/// The sum is folded with `D(1/w) = -D(w)` into two one-sided sums over
/// points inside the unit disk, and each is truncated once the bound on the
/// remaining terms drops below `tol.absolute`.
pub fn elliptic_dilog(p: QPoint, tol: Tolerance) -> Result<f64> {
    let q = p.q;
    let aq = q.norm();
    let tail_factor = 1.0 / (1.0 - aq);
    let mut total = bloch_wigner(p.z);
    let mut fwd = p.z * q;
    let mut bwd = q / p.z;
    let mut n = 1;
    loop {
        total += bloch_wigner(fwd) - bloch_wigner(bwd);
        // Both remaining tails are dominated by the geometric series that
        // starts at the next term, up to the slowly growing log factor.
        let next = (fwd.norm().max(bwd.norm())) * aq;
        let bound = 2.0 * term_bound(next) * tail_factor * (1.0 + (n as f64).ln_1p());
        if bound < tol.absolute || next == 0.0 {
            return Ok(total);
        }
        fwd *= q;
        bwd *= q;
        n += 1;
        if n > 10_000_000 {
            return Err(Error::NoConvergence {
                estimate: total,
                error_estimate: bound,
                evaluations: 2 * n,
            });
        }
    }
}

/// `sum m_i D^E(P_i)` for a formal divisor whose points are embedded through
/// the generators' elliptic logarithms.
pub fn elliptic_dilog_divisor(embedding: &PointEmbedding, d: &FormalDivisor, tol: Tolerance) -> Result<f64> {
    let q = embedding.q();
    let mut total = 0.0;
    for (point, mult) in d.terms() {
        let z = embedding.z_of(point)?;
        // The identity maps to z = 1, where D vanishes identically.
        let qp = QPoint::new(q, z)?;
        total += mult as f64 * elliptic_dilog(qp, tol)?;
    }
    Ok(total)
}
