//! Re-expansion of polynomials in a Pochhammer basis, and the operator
//! residual computed through it.
//!
//! The basis element of order n, written in the series variable `s` (`s = x`
//! for an ascending series, `s = 1/x` for a descending one), is
//!
//! ```text
//! B_n(s) = (1 - rs)(1 - q rs) ... (1 - q^{n-1} rs)
//! ```
//!
//! with `r = 1/d` (ascending) or `r = d` (descending). `B_n` is a degree-n
//! polynomial with leading coefficient `(-r)^n q^{n(n-1)/2}`, so the family
//! is triangular: any polynomial of degree M has a unique expansion in
//! `B_0..B_M`, computed by eliminating the top order downward. Everything
//! here is exact in exact mode.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frobenius::{Anchor, PowerSeriesSolution};
use crate::qcore::{QContext, Scalar};
use crate::qdiff::{Poly, QDifferenceEquation};

use super::{Orientation, PochhammerSeries};

/// Basis polynomials `B_0 .. B_m` in the series variable, for ratio `r`.
fn basis_polys(ctx: &QContext, r: &Scalar, m: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(m + 1);
    let mut acc = Poly::constant(ctx.one());
    out.push(acc.clone());
    for j in 0..m as i64 {
        let step = Poly::from_coeffs([ctx.one(), -(ctx.qpow_int(j) * r)].into());
        acc = acc.mul(&step);
        out.push(acc.clone());
    }
    out
}

/// Leading coefficient of `B_n`: `(-r)^n q^{n(n-1)/2}`.
fn basis_leading(ctx: &QContext, r: &Scalar, n: usize) -> Scalar {
    let n = n as i64;
    (-r).powi(n) * ctx.qpow_int(n * (n - 1) / 2)
}

fn series_ratio(series: &PochhammerSeries) -> Scalar {
    match series.orientation {
        Orientation::Ascending => series.node.recip(),
        Orientation::Descending => series.node.clone(),
    }
}

/// The truncated series as a polynomial in its series variable (prefactor
/// not included): `sum_n a_n B_n(s)`.
fn series_polynomial(ctx: &QContext, series: &PochhammerSeries) -> Poly {
    let r = series_ratio(series);
    let n = series.coeffs.len().saturating_sub(1);
    let basis = basis_polys(ctx, &r, n);
    let mut acc = Poly::zero();
    for (a, b) in series.coeffs.iter().zip(&basis) {
        acc = acc.add(&b.scale(a));
    }
    acc
}

/// Expands a polynomial in the basis `B_0..B_m`, top order first. The
/// returned vector has length `m + 1` and satisfies
/// `p = sum_k out[k] B_k` exactly; `p` must have degree at most `m`.
fn expand_in_basis(ctx: &QContext, p: &Poly, r: &Scalar, m: usize) -> Vec<Scalar> {
    debug_assert!(p.degree().map_or(true, |d| d <= m));
    let basis = basis_polys(ctx, r, m);
    let mut rest = p.clone();
    let mut out = alloc::vec![ctx.zero(); m + 1];
    for k in (0..=m).rev() {
        let c = rest.coeff_or_zero(k, ctx);
        if c.is_zero() {
            continue;
        }
        let coeff = c / basis_leading(ctx, r, k);
        rest = rest.sub(&basis[k].scale(&coeff));
        out[k] = coeff;
    }
    out
}

/// Applies the equation to the truncated series and returns the residual
/// coefficients in the same Pochhammer basis.
///
/// For an ascending series `g = x^mu sum_n a_n B_n(x)` the residual `R`
/// satisfies `E[g] = x^mu sum_m R[m] B_m(x)` exactly. For a descending
/// series the computation runs on the reflected equation in `xi = 1/x`,
/// where the series is ascending; the returned coefficients expand
/// `xi^degree * E[g](1/xi)` relative to `xi^{-mu}`, which vanishes exactly
/// when `E[g]` does, order by order.
///
/// When the truncation order is `N` and the coefficients genuinely solve
/// the equation, the residual is supported on `{N, ..., N + degree}` only;
/// the verifiers assert which of those orders actually survive.
pub fn operator_residual_in_basis(
    eq: &QDifferenceEquation,
    series: &PochhammerSeries,
) -> Result<Vec<Scalar>> {
    let ctx = eq.ctx();
    ctx.check_mode(&series.node, "basis node")?;
    if series.node.is_zero() {
        return Err(Error::InvalidParameter(String::from(
            "Pochhammer basis node must be nonzero",
        )));
    }
    if series.coeffs.is_empty() {
        return Err(Error::InvalidParameter(String::from(
            "series has no coefficients",
        )));
    }
    match series.orientation {
        Orientation::Ascending => {
            let gauged = eq.gauge_power(series.prefactor_exponent);
            let h = series_polynomial(ctx, series);
            let applied = gauged.apply_to_poly(&h);
            let m = series.coeffs.len() - 1 + eq.degree();
            let r = series_ratio(series);
            Ok(expand_in_basis(ctx, &applied, &r, m))
        }
        Orientation::Descending => {
            let mirrored = PochhammerSeries {
                prefactor_exponent: -series.prefactor_exponent,
                node: series.node.recip(),
                orientation: Orientation::Ascending,
                coeffs: series.coeffs.clone(),
            };
            operator_residual_in_basis(&eq.reflect(), &mirrored)
        }
    }
}

/// Largest magnitude among residual orders `0 ..= interior_end` (0.0 when
/// the range is empty or beyond the vector).
pub fn interior_max_abs(residual: &[Scalar], interior_end: usize) -> f64 {
    let mut max = 0.0f64;
    for r in residual.iter().take(interior_end + 1) {
        let m = r.magnitude();
        if m > max {
            max = m;
        }
    }
    max
}

/// Expands a truncated Pochhammer series into an ordinary power series in
/// its series variable, through order `n_max`.
///
/// The result is the exact expansion of the truncation (a polynomial of
/// degree `N`, so orders above `N` are zero); note that the expansion of
/// the corresponding infinite series differs at every order in general,
/// since all basis elements carry every power. The two agree through all
/// orders exactly when the coefficient sequence terminates.
pub fn pochhammer_to_power(
    ctx: &QContext,
    series: &PochhammerSeries,
    n_max: usize,
) -> Result<PowerSeriesSolution> {
    ctx.check_mode(&series.node, "basis node")?;
    if series.node.is_zero() {
        return Err(Error::InvalidParameter(String::from(
            "Pochhammer basis node must be nonzero",
        )));
    }
    let poly = series_polynomial(ctx, series);
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        coeffs.push(poly.coeff_or_zero(k, ctx));
    }
    let (anchor, exponent) = match series.orientation {
        Orientation::Ascending => (Anchor::Zero, series.prefactor_exponent),
        Orientation::Descending => (Anchor::Infinity, -series.prefactor_exponent),
    };
    Ok(PowerSeriesSolution {
        anchor,
        root: ctx.qpow(exponent),
        exponent: Some(exponent),
        coeffs,
    })
}
