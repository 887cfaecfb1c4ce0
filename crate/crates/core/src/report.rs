//! A uniform shape for "computed vs expected" checks.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Absolute comparison `|lhs - rhs| < tol`.
    pub fn absolute(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let residual = (lhs - rhs).abs();
        CheckRecord {
            name: name.into(),
            lhs,
            rhs,
            residual,
            tol,
            pass: residual < tol,
        }
    }

    /// Relative comparison `|lhs - rhs| / max(|rhs|, 1e-300) < tol`.
    pub fn relative(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let residual = (lhs - rhs).abs() / rhs.abs().max(1e-300);
        CheckRecord {
            name: name.into(),
            lhs,
            rhs,
            residual,
            tol,
            pass: residual < tol,
        }
    }

    /// A record whose residual was computed elsewhere.
    pub fn with_residual(name: impl Into<String>, lhs: f64, rhs: f64, residual: f64, tol: f64) -> Self {
        CheckRecord {
            name: name.into(),
            lhs,
            rhs,
            residual,
            tol,
            pass: residual < tol,
        }
    }
}
