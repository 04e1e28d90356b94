//! Exact and floating-point arithmetic for three-term q-difference equations
//! of q-hypergeometric type.
//!
//! The objects of study are equations of the form
//!
//! ```text
//! u(x)·g(x/q) + v(x)·g(x) + w(x)·g(qx) = 0
//! ```
//!
//! with polynomial coefficients u, v, w, built from half-integer exponent
//! parameters and nonzero accessory parameters. The crate constructs the
//! classical q-hypergeometric equation, the q-Heun equation, and two variants
//! (quadratic and cubic coefficient degree), then provides:
//!
//! - local Frobenius-type series at x = 0 and x = ∞ with characteristic
//!   exponents, resonance handling, and apparent-singularity checks
//!   ([`frobenius`]),
//! - closed-form solution families as power series and q-Pochhammer-basis
//!   series, with exact residual verification ([`closedform`]),
//! - the two-variable q-Appell series Φ⁽¹⁾, its contiguous relations, and the
//!   specialization tying it to the quadratic variant ([`appell`]),
//! - degeneration limits down the hierarchy (cubic → quadratic →
//!   q-hypergeometric) and the q → 1 continuum limit to Fuchsian ODEs
//!   ([`limits`]).
//!
//! All arithmetic runs in one of two modes fixed by a [`QContext`]: exact
//! (big rationals over ℚ, with every q-power expressed through p = q^{1/2})
//! or floating (complex f64). Exact mode never rounds; identities asserted by
//! the verification routines hold as literal equalities of rationals.
#![cfg_attr(not(feature = "std"), no_std)]
// Triangular double sums read clearest with explicit indices, and the
// verification entry points take their full parameter lists on purpose.
#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

extern crate alloc;

pub mod appell;
pub mod closedform;
pub mod error;
pub mod frobenius;
pub mod limits;
pub mod qcore;
pub mod qdiff;

pub use error::{Error, Result};
pub use qcore::{HalfInt, Mode, QContext, Scalar};
pub use qdiff::{Params2, Params3, Poly, QDifferenceEquation};
