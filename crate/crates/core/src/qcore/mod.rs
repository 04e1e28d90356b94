//! Arithmetic kernel: scalars, half-integers, and the q-context.
//!
//! Every computation in this crate happens over one of two scalar domains,
//! chosen once per [`QContext`]:
//!
//! - **exact**: arbitrary-precision rationals. The base p = q^{1/2} is a
//!   rational number outside {0, ±1}, and every q-power that appears in the
//!   equations has half-integer exponent, so it is an integer power of p and
//!   stays rational. Identities verified in this mode are literal equalities.
//! - **float**: complex f64, for continuum limits (q → 1 needs irrational
//!   q-powers) and quick numeric checks.
//!
//! Exponents are [`HalfInt`] values stored as twice their value, which keeps
//! the bookkeeping (sums, differences, parity checks) in integer arithmetic.

mod context;
mod halfint;
mod scalar;

pub use context::{Mode, QContext};
pub use halfint::HalfInt;
pub use scalar::{exact_sqrt, Scalar};

/// Default relative tolerance for float-mode residual checks.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-10;

/// Relative tolerance used to detect resonances (q-power coincidences of
/// characteristic roots) in float mode.
pub const RESONANCE_TOLERANCE: f64 = 1e-8;

/// Hard cap on the total bit size (numerator plus denominator) of one exact
/// scalar. Exceeding it panics rather than silently grinding to a halt.
pub const SCALAR_BIT_LIMIT: u64 = 1_000_000;
