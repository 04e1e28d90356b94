//! Basic hypergeometric series: the 2-phi-1 power series and the
//! Hahn-type 3-phi-2 sum in an ascending Pochhammer basis.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qcore::{HalfInt, QContext, Scalar};

use super::{Orientation, PochhammerSeries};

fn check_abc(ctx: &QContext, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<()> {
    ctx.check_mode(a, "parameter a")?;
    ctx.check_mode(b, "parameter b")?;
    ctx.check_mode(c, "parameter c")
}

/// Coefficients `c_0..c_{n_max}` of the 2-phi-1 series
/// `sum_n (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n) x^n`, with `c_0 = 1`.
///
/// Fails with a named factor when a denominator Pochhammer factor vanishes.
pub fn phi21_coeffs(
    ctx: &QContext,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    n_max: usize,
) -> Result<Vec<Scalar>> {
    check_abc(ctx, a, b, c)?;
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut acc = ctx.one();
    coeffs.push(acc.clone());
    for n in 0..n_max as i64 {
        let den_c = ctx.qpoch_ratio_step(c, n);
        let den_q = ctx.qpoch_ratio_step(ctx.q(), n);
        for (factor, label) in [(&den_c, "(c;q)_n"), (&den_q, "(q;q)_n")] {
            if factor.is_zero() {
                return Err(Error::VanishingFactor {
                    factor: String::from(label),
                    n,
                });
            }
        }
        acc = acc * ctx.qpoch_ratio_step(a, n) * ctx.qpoch_ratio_step(b, n) / (den_c * den_q);
        coeffs.push(acc.clone());
    }
    Ok(coeffs)
}

/// Partial sum of the 2-phi-1 series through order `n_max` at the point `x`.
pub fn phi21(
    ctx: &QContext,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    x: &Scalar,
    n_max: usize,
) -> Result<Scalar> {
    ctx.check_mode(x, "argument x")?;
    let coeffs = phi21_coeffs(ctx, a, b, c, n_max)?;
    let mut sum = ctx.zero();
    let mut xn = ctx.one();
    for c_n in &coeffs {
        sum = sum + c_n * &xn;
        xn = xn * x;
    }
    Ok(sum)
}

/// The Hahn-type solution of the q-hypergeometric equation as an ascending
/// Pochhammer series at the node `d = c/(ab)`:
///
/// ```text
/// sum_n (abx/c; q)_n · (a;q)_n (b;q)_n q^n / ((abq/c;q)_n (q;q)_n)
/// ```
///
/// The returned series has prefactor exponent 0 and coefficient `a_0 = 1`.
pub fn phi32_hahn_series(
    ctx: &QContext,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    n_max: usize,
) -> Result<PochhammerSeries> {
    check_abc(ctx, a, b, c)?;
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::InvalidParameter(String::from(
            "Hahn-type series needs nonzero a, b, c",
        )));
    }
    let node = c / &(a * b);
    let pivot = &(a * b) * &(ctx.q() / c);
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut acc = ctx.one();
    coeffs.push(acc.clone());
    for n in 0..n_max as i64 {
        let den_pivot = ctx.qpoch_ratio_step(&pivot, n);
        let den_q = ctx.qpoch_ratio_step(ctx.q(), n);
        for (factor, label) in [(&den_pivot, "(abq/c;q)_n"), (&den_q, "(q;q)_n")] {
            if factor.is_zero() {
                return Err(Error::VanishingFactor {
                    factor: String::from(label),
                    n,
                });
            }
        }
        acc = acc * ctx.qpoch_ratio_step(a, n) * ctx.qpoch_ratio_step(b, n) * ctx.q()
            / (den_pivot * den_q);
        coeffs.push(acc.clone());
    }
    Ok(PochhammerSeries {
        prefactor_exponent: HalfInt::ZERO,
        node,
        orientation: Orientation::Ascending,
        coeffs,
    })
}

/// Evaluates the Hahn-type partial sum through order `n_max` at `x`.
pub fn phi32_hahn(
    ctx: &QContext,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    x: &Scalar,
    n_max: usize,
) -> Result<Scalar> {
    phi32_hahn_series(ctx, a, b, c, n_max)?.eval(ctx, x)
}
