//! Closed-form solution families for the three-term equations.
//!
//! Series here come in two shapes. Power-series solutions (plain Frobenius
//! form) are produced for the basic-hypergeometric family and for the
//! inverse-power family `g1`; they reuse [`PowerSeriesSolution`] from the
//! local-series module. Pochhammer-basis solutions expand in the graded
//! basis
//!
//! ```text
//! ascending:   B_n(x) = (x/d; q)_n = (1 - x/d)(1 - qx/d) ... (1 - q^{n-1}x/d)
//! descending:  B_n(x) = (d/x; q)_n = (1 - d/x)(1 - qd/x) ... (1 - q^{n-1}d/x)
//! ```
//!
//! attached to a node `d` (a root of the outer operator coefficients), with
//! an overall prefactor `x^mu`. The basis is triangular with respect to
//! powers of `x` (ascending) or `1/x` (descending), so a polynomial has a
//! unique finite expansion and operator residuals can be re-expanded in the
//! same basis exactly. That re-expansion is the primary verifier: applying
//! the operator to a truncation at order `N` must leave residual support
//! only in orders `{N, N+1, N+2}`.
//!
//! The coefficient sequences also satisfy explicit scalar recurrences (a
//! six-term one for the ascending family, a seven-term double-index one for
//! the descending family); those are evaluated term by term in
//! [`recurrences`].

mod basis;
mod deg2;
mod deg3;
mod hyper;
mod recurrences;

pub use basis::{interior_max_abs, operator_residual_in_basis, pochhammer_to_power};
pub use deg2::{g1_series, g2_series, g3_series};
pub use deg3::{conj3_series, verify_conjecture, ConjFamily, ConjectureReport};
pub(crate) use deg3::check_perm;
pub use hyper::{phi21, phi21_coeffs, phi32_hahn, phi32_hahn_series};
pub use recurrences::{
    recurrence_residual_thm2, recurrence_residual_thm3, recurrence_residuals_thm2,
    recurrence_residuals_thm3,
};

use crate::error::{Error, Result};
use crate::qcore::{HalfInt, QContext, Scalar};
use alloc::string::String;
use alloc::vec::Vec;

/// Direction of the Pochhammer basis attached to a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Basis elements `(x/d; q)_n`; series lives near `x = 0`.
    Ascending,
    /// Basis elements `(d/x; q)_n`; series lives near `x = infinity`.
    Descending,
}

/// A truncated series `x^mu * sum_n a_n B_n(x)` in a Pochhammer basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PochhammerSeries {
    /// Exponent `mu` of the power prefactor.
    pub prefactor_exponent: HalfInt,
    /// The node `d` the basis is attached to; never zero.
    pub node: Scalar,
    /// Whether the basis ascends in `x` or in `1/x`.
    pub orientation: Orientation,
    /// Coefficients `a_0, a_1, ..., a_N` with `a_0 = 1`.
    pub coeffs: Vec<Scalar>,
}

impl PochhammerSeries {
    /// Truncation order `N` (index of the last stored coefficient).
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Evaluates the truncated series at a point, prefactor included.
    ///
    /// Fails on `x = 0` (the prefactor may have a negative exponent and the
    /// descending basis is singular there) and on mode mismatch.
    pub fn eval(&self, ctx: &QContext, x: &Scalar) -> Result<Scalar> {
        ctx.check_mode(x, "series argument")?;
        if x.is_zero() {
            // Ascending basis elements are all 1 at the origin; the value is
            // then determined by the prefactor x^mu alone.
            if self.orientation == Orientation::Descending || self.prefactor_exponent.twice < 0 {
                return Err(Error::ZeroArgument(String::from(
                    "Pochhammer series singular at x = 0",
                )));
            }
            if self.prefactor_exponent.twice > 0 {
                return Ok(ctx.zero());
            }
            let mut sum = ctx.zero();
            for a in &self.coeffs {
                sum = &sum + a;
            }
            return Ok(sum);
        }
        let ratio = match self.orientation {
            Orientation::Ascending => x / &self.node,
            Orientation::Descending => &self.node / x,
        };
        let mut sum = ctx.zero();
        let mut basis = ctx.one();
        for (n, a) in self.coeffs.iter().enumerate() {
            sum = &sum + &(a * &basis);
            basis = &basis * &(ctx.one() - &(&ratio * &ctx.qpow_int(n as i64)));
        }
        let prefactor = half_power(x, self.prefactor_exponent)?;
        Ok(&sum * &prefactor)
    }
}

/// `x^e` for a half-integer `e`, using an exact square root when `e` is not
/// an integer (exact mode then requires `x` to be a perfect rational square).
fn half_power(x: &Scalar, e: HalfInt) -> Result<Scalar> {
    if let Some(k) = e.as_integer() {
        return Ok(x.powi(k));
    }
    let root = x.try_sqrt().ok_or_else(|| {
        Error::FloatModeRequired(String::from(
            "half-integer prefactor exponent at a point with no exact square root",
        ))
    })?;
    Ok(root.powi(e.twice))
}

/// Prefix products `[(a;q)_0, (a;q)_1, ..., (a;q)_n]`.
///
/// Vanishing factors are allowed; use [`poch_prefix_nonzero`] for
/// denominator positions.
pub(crate) fn poch_prefix(ctx: &QContext, a: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ctx.one();
    out.push(acc.clone());
    for j in 0..n {
        acc = &acc * &ctx.qpoch_ratio_step(a, j as i64);
        out.push(acc.clone());
    }
    out
}

/// Prefix products like [`poch_prefix`], but returns `VanishingFactor`
/// naming `label` if any factor `1 - a q^j`, `j < n`, vanishes.
pub(crate) fn poch_prefix_nonzero(
    ctx: &QContext,
    a: &Scalar,
    n: usize,
    label: &str,
) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ctx.one();
    out.push(acc.clone());
    for j in 0..n {
        let factor = ctx.qpoch_ratio_step(a, j as i64);
        let vanishes = if ctx.is_exact() {
            factor.is_zero()
        } else {
            factor.magnitude() <= crate::qcore::RESONANCE_TOLERANCE
        };
        if vanishes {
            return Err(Error::VanishingFactor {
                factor: String::from(label),
                n: j as i64,
            });
        }
        acc = &acc * &factor;
        out.push(acc.clone());
    }
    Ok(out)
}

/// Prefix products of `(q;q)_n`, failing with a named factor when `q` is a
/// root of unity (float mode can hit this; exact mode cannot).
pub(crate) fn q_factorial_prefix(ctx: &QContext, n: usize) -> Result<Vec<Scalar>> {
    poch_prefix_nonzero(ctx, ctx.q(), n, "(q;q)_n")
}

/// Powers `[c^0, c^1, ..., c^n]`.
pub(crate) fn power_prefix(ctx: &QContext, c: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ctx.one();
    out.push(acc.clone());
    for _ in 0..n {
        acc = &acc * c;
        out.push(acc.clone());
    }
    out
}
