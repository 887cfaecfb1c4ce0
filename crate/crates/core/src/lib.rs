//! Verification engine for identities between Mahler measures of two-variable
//! polynomial families, elliptic regulators and `L`-values of elliptic curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: quadrature (Gauss–Kronrod and tanh-sinh) and stable quadratics.
//! * [`dilogarithm`]: `Li2`, the Bloch–Wigner function `D` and the elliptic
//!   dilogarithm `D^E`.
//! * [`elliptic`]: exact and numeric Weierstrass arithmetic, period lattices,
//!   elliptic logarithms and the family models.
//! * [`divisors`]: the symbolic diamond calculus in `Z[E]^-`.
//! * [`mahler`]: Mahler measures via Jensen's formula and torus quadrature.
//! * [`periods`]: the cycle integrals and their change-of-variable identities.
//! * [`lfunctions`]: point counting and `L'(E,0)` via the functional equation.
//! * [`regulator`]: `D^E` of the diamonds against `2π m`.
//!
//! Grid sweeps go through [`par`], which uses rayon when the `parallel`
//! feature is enabled and falls back to plain iteration otherwise.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dilogarithm;
pub mod divisors;
pub mod elliptic;
pub mod error;
pub mod family;
pub mod lfunctions;
pub mod mahler;
pub mod numerics;
pub mod par;
pub mod periods;
pub mod regulator;
pub mod report;

pub use error::{Error, Result};
pub use family::{Family, FamilySpec};
