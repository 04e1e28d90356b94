//! Polynomials, three-term q-difference equations, and the equation builders.
//!
//! The central object is [`QDifferenceEquation`], the operator
//!
//! ```text
//! E[g](x) = u(x)·g(x/q) + v(x)·g(x) + w(x)·g(q·x)
//! ```
//!
//! with polynomial coefficients u, v, w. Four builders construct the
//! equations this crate studies:
//!
//! - [`make_qhypergeometric`]: the classical second-order equation whose
//!   power-series solution at 0 is a basic hypergeometric ₂φ₁ series,
//! - [`make_qheun`]: degree-two coefficients with four free singularity
//!   parameters plus an accessory pair (β, E),
//! - [`make_variant_deg2`]: the β = 1 member of the q-Heun family with its
//!   accessory coefficient E pinned to the value that makes every local
//!   exponent difference resonant yet apparent,
//! - [`make_variant_deg3`]: the analogous degree-three equation.

mod builders;
mod equation;
mod json;
mod params;
mod poly;

pub use builders::{
    make_qheun, make_qhypergeometric, make_variant_deg2, make_variant_deg3, variant_deg2_e_coeff,
};
pub(crate) use builders::variant_deg2_polys_unchecked;
pub use equation::QDifferenceEquation;
pub use json::{equation_json, halfint_json, params2_json, params3_json, poly_json, scalar_json};
pub use params::{Params2, Params3};
pub use poly::Poly;
