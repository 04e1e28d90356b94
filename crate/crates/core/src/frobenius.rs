//! Local power-series analysis at x = 0 and x = ∞.
//!
//! Substituting g(x) = x^ρ·(c₀ + c₁x + c₂x² + …) into the three-term
//! equation and reading off the lowest order gives the characteristic
//! quadratic at 0,
//!
//! ```text
//! w₀·X² + v₀·X + u₀ = 0,      X = q^ρ,
//! ```
//!
//! in the constant coefficients of u, v, w. At ∞ the same happens in the
//! top coefficients for g(x) = x^{−ρ}·(c₀ + c₁/x + …); this module reduces
//! that case to the one at 0 through [`QDifferenceEquation::reflect`].
//!
//! Higher orders give a one-term recurrence for the cₙ, which degenerates
//! exactly at a *resonance*: an n ≥ 1 with X·qⁿ again a characteristic
//! root. There the series either continues freely (the resonance is
//! *apparent*, and this module pins the free coefficient to 0) or fails,
//! which would force a logarithm and is reported as an error.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qcore::{HalfInt, QContext, Scalar, RESONANCE_TOLERANCE};
use crate::qdiff::{Poly, QDifferenceEquation};

/// Largest |twice-exponent| searched by [`discrete_log_p`].
pub const DISCRETE_LOG_LIMIT: i64 = 4096;

/// Which point the local data belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    Zero,
    Infinity,
}

/// The two characteristic roots at an anchor point, with their exponents
/// when the roots are integer powers of p.
///
/// Roots are ordered so that a resonant pair comes as (smaller exponent,
/// larger exponent): `roots[1] = roots[0]·q^m` with m ≥ 0 whenever such an
/// integer m exists.
#[derive(Clone, Debug)]
pub struct ExponentPair {
    pub anchor: Anchor,
    pub roots: [Scalar; 2],
    pub exponents: [Option<HalfInt>; 2],
}

impl ExponentPair {
    /// The integer m ≥ 0 with `roots[1] = roots[0]·q^m`, if any.
    pub fn resonance_gap(&self, ctx: &QContext) -> Option<i64> {
        let ratio = &self.roots[1] / &self.roots[0];
        let m = discrete_log_p(ctx, &ratio)?.as_integer()?;
        (m >= 0).then_some(m)
    }
}

/// Writes x as an integer power of p: finds e with x = p^{e.twice}, i.e.
/// x = q^e for the half-integer e. Exact mode verifies the power literally;
/// float mode accepts a relative mismatch up to [`RESONANCE_TOLERANCE`].
/// Searches |e.twice| ≤ [`DISCRETE_LOG_LIMIT`].
pub fn discrete_log_p(ctx: &QContext, x: &Scalar) -> Option<HalfInt> {
    // f64::ln and f64::round are std inherent methods; under no_std the
    // trait supplies them, so the import is only "unused" with std on.
    #[allow(unused_imports)]
    use num_traits::Float;
    if x.is_zero() {
        return None;
    }
    let log_p = ctx.p().magnitude().ln();
    if log_p == 0.0 || !log_p.is_finite() {
        return None;
    }
    let guess = x.magnitude().ln() / log_p;
    if !guess.is_finite() {
        return None;
    }
    let k = guess.round() as i64;
    if k.abs() > DISCRETE_LOG_LIMIT {
        return None;
    }
    let candidate = ctx.p().powi(k);
    let hit = if ctx.is_exact() {
        &candidate == x
    } else {
        candidate.approx_eq(x, RESONANCE_TOLERANCE)
    };
    hit.then(|| HalfInt::new(k))
}

/// Solves A·X² + B·X + C = 0 for two nonzero roots.
fn solve_char_quadratic(
    ctx: &QContext,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<[Scalar; 2]> {
    if a.is_zero() || c.is_zero() {
        return Err(Error::MalformedEquation(
            "characteristic quadratic is degenerate (a boundary coefficient vanishes)".into(),
        ));
    }
    let disc = b * b - ctx.int(4) * a * c;
    let root = match disc.try_sqrt() {
        Some(r) => r,
        None => return Err(Error::IrrationalExponents),
    };
    let half = (ctx.int(2) * a).recip();
    let x1 = (-b + &root) * &half;
    let x2 = (-b - &root) * &half;
    Ok([x1, x2])
}

fn char_pair(
    ctx: &QContext,
    anchor: Anchor,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<ExponentPair> {
    let [x1, x2] = solve_char_quadratic(ctx, a, b, c)?;
    // Order resonant pairs as (smaller exponent, larger exponent); otherwise
    // put the larger-magnitude root first (which is the same thing for
    // real 0 < q < 1).
    let ratio_gap = |lo: &Scalar, hi: &Scalar| -> bool {
        let ratio = hi / lo;
        discrete_log_p(ctx, &ratio)
            .and_then(|e| e.as_integer())
            .is_some_and(|m| m >= 0)
    };
    let (first, second) = if ratio_gap(&x1, &x2) {
        (x1, x2)
    } else if ratio_gap(&x2, &x1) {
        (x2, x1)
    } else if x1.magnitude() >= x2.magnitude() {
        (x1, x2)
    } else {
        (x2, x1)
    };
    let exponents = [discrete_log_p(ctx, &first), discrete_log_p(ctx, &second)];
    Ok(ExponentPair {
        anchor,
        roots: [first, second],
        exponents,
    })
}

/// Characteristic roots at x = 0, from the constant coefficients.
pub fn char_exponents_zero(eq: &QDifferenceEquation) -> Result<ExponentPair> {
    let ctx = eq.ctx();
    char_pair(
        ctx,
        Anchor::Zero,
        &eq.w().coeff_or_zero(0, ctx),
        &eq.v().coeff_or_zero(0, ctx),
        &eq.u().coeff_or_zero(0, ctx),
    )
}

/// Characteristic roots at x = ∞, from the top coefficients: the roots X of
/// u_d·X² + v_d·X + w_d = 0 with X = q^ρ for solutions g ~ x^{−ρ}.
pub fn char_exponents_infinity(eq: &QDifferenceEquation) -> Result<ExponentPair> {
    let ctx = eq.ctx();
    let d = eq.degree();
    char_pair(
        ctx,
        Anchor::Infinity,
        &eq.u().coeff_or_zero(d, ctx),
        &eq.v().coeff_or_zero(d, ctx),
        &eq.w().coeff_or_zero(d, ctx),
    )
}

/// One local solution as a coefficient list: g(x) = x^ρ·Σ cₙxⁿ at 0, or
/// g(x) = x^{−ρ}·Σ cₙx^{−n} at ∞, with c₀ = 1 and X = q^ρ stored as
/// `root`. The symbolic prefactor is not evaluated; `exponent` carries ρ
/// when it is a half-integer.
#[derive(Clone, Debug)]
pub struct PowerSeriesSolution {
    pub anchor: Anchor,
    pub root: Scalar,
    pub exponent: Option<HalfInt>,
    pub coeffs: Vec<Scalar>,
}

impl PowerSeriesSolution {
    /// Σ cₙ·sⁿ, the series part without the x^ρ prefactor (s = x at 0,
    /// s = 1/x at ∞).
    pub fn series_part_eval(&self, s: &Scalar) -> Scalar {
        Poly::from_coeffs(self.coeffs.clone()).eval(s)
    }
}

/// u_j·X⁻¹·q^{−k} + v_j + w_j·X·q^k: the factor a term cₖ·x^{ρ+k}
/// contributes at order ρ+k+j through the coefficient-j parts of u, v, w.
fn level_factor(eq: &QDifferenceEquation, x_root: &Scalar, j: usize, k: i64) -> Scalar {
    let ctx = eq.ctx();
    let qk = ctx.qpow_int(k);
    eq.u().coeff_or_zero(j, ctx) * x_root.recip() * qk.recip()
        + eq.v().coeff_or_zero(j, ctx)
        + eq.w().coeff_or_zero(j, ctx) * x_root * &qk
}

/// The three individual magnitudes of [`level_factor`]'s terms, for relative
/// zero tests in float mode.
fn level_factor_scale(eq: &QDifferenceEquation, x_root: &Scalar, j: usize, k: i64) -> f64 {
    let ctx = eq.ctx();
    let qk = ctx.qpow_int(k);
    let t1 = (eq.u().coeff_or_zero(j, ctx) * x_root.recip() * qk.recip()).magnitude();
    let t2 = eq.v().coeff_or_zero(j, ctx).magnitude();
    let t3 = (eq.w().coeff_or_zero(j, ctx) * x_root * &qk).magnitude();
    t1.max(t2).max(t3).max(1.0)
}

fn is_effectively_zero(ctx: &QContext, value: &Scalar, scale: f64) -> bool {
    if ctx.is_exact() {
        value.is_zero()
    } else {
        value.magnitude() <= RESONANCE_TOLERANCE * scale
    }
}

fn run_recurrence(
    eq: &QDifferenceEquation,
    anchor: Anchor,
    x_root: &Scalar,
    n_max: usize,
) -> Result<PowerSeriesSolution> {
    let ctx = eq.ctx();
    ctx.check_mode(x_root, "characteristic root")?;
    if x_root.is_zero() {
        return Err(Error::ZeroArgument("characteristic root".into()));
    }
    let d = eq.degree();
    let mut coeffs = vec![ctx.one()];
    for n in 1..=n_max {
        // Right-hand side: -sum_{k<n} T(n-k, k)·c_k, only k >= n-d contribute.
        let mut rhs = ctx.zero();
        let mut rhs_scale = 0.0f64;
        let lo = n.saturating_sub(d);
        for k in lo..n {
            let t = level_factor(eq, x_root, n - k, k as i64);
            let term = t * &coeffs[k];
            rhs_scale = rhs_scale.max(term.magnitude());
            rhs = rhs + term;
        }
        rhs = -rhs;
        let head = level_factor(eq, x_root, 0, n as i64);
        let head_scale = level_factor_scale(eq, x_root, 0, n as i64);
        if is_effectively_zero(ctx, &head, head_scale) {
            // Resonance: X·q^n is again a characteristic root. The series
            // survives only if the accumulated obstruction cancels.
            if is_effectively_zero(ctx, &rhs, rhs_scale.max(1.0)) {
                coeffs.push(ctx.zero());
            } else {
                return Err(Error::LogarithmicCase {
                    order: n as i64,
                    obstruction: (-rhs).to_string(),
                });
            }
        } else {
            coeffs.push(rhs / head);
        }
    }
    let exponent = discrete_log_p(ctx, x_root);
    Ok(PowerSeriesSolution {
        anchor,
        root: x_root.clone(),
        exponent,
        coeffs,
    })
}

/// Frobenius coefficients at x = 0 for the given characteristic root, up to
/// order `n_max`. Resonant orders with vanishing obstruction get
/// coefficient 0; a nonvanishing obstruction is a logarithmic case and
/// fails.
pub fn local_series_zero(
    eq: &QDifferenceEquation,
    x_root: &Scalar,
    n_max: usize,
) -> Result<PowerSeriesSolution> {
    run_recurrence(eq, Anchor::Zero, x_root, n_max)
}

/// Frobenius coefficients at x = ∞ (series in 1/x) for the given
/// characteristic root of [`char_exponents_infinity`].
pub fn local_series_infinity(
    eq: &QDifferenceEquation,
    x_root: &Scalar,
    n_max: usize,
) -> Result<PowerSeriesSolution> {
    run_recurrence(&eq.reflect(), Anchor::Infinity, x_root, n_max)
}

/// Residual coefficients of the equation applied to a truncated local
/// solution, through the orders the truncation determines exactly
/// (0 ..= n_max). Computed along an independent path: the equation is
/// gauged by the root and applied as a polynomial operator.
pub fn power_series_residual(
    eq: &QDifferenceEquation,
    sol: &PowerSeriesSolution,
) -> Vec<Scalar> {
    let ctx = eq.ctx();
    let base = match sol.anchor {
        Anchor::Zero => eq.clone(),
        Anchor::Infinity => eq.reflect(),
    };
    let gauged = base.gauge_by_root(&sol.root);
    let series = Poly::from_coeffs(sol.coeffs.clone());
    let residual = gauged.apply_to_poly(&series);
    (0..sol.coeffs.len())
        .map(|k| residual.coeff_or_zero(k, ctx))
        .collect()
}

/// The obstruction at the claimed resonance: with roots X and X·q^gap, runs
/// the recurrence from the smaller root up to order gap−1 and returns
///
/// ```text
/// S = Σ_{k<gap} (u_{gap−k}·X⁻¹q^{−k} + v_{gap−k} + w_{gap−k}·X·q^k)·cₖ,
/// ```
///
/// which is zero exactly when the resonance is apparent (a power-series
/// solution exists at the smaller exponent with a free coefficient at order
/// `gap`).
pub fn apparency_obstruction(
    eq: &QDifferenceEquation,
    anchor: Anchor,
    gap: i64,
) -> Result<Scalar> {
    let ctx = eq.ctx();
    if gap < 1 {
        return Err(Error::NotResonant { gap });
    }
    let pair = match anchor {
        Anchor::Zero => char_exponents_zero(eq)?,
        Anchor::Infinity => char_exponents_infinity(eq)?,
    };
    if pair.resonance_gap(ctx) != Some(gap) {
        return Err(Error::NotResonant { gap });
    }
    let base = match anchor {
        Anchor::Zero => eq.clone(),
        Anchor::Infinity => eq.reflect(),
    };
    let x_root = &pair.roots[0];
    let below = run_recurrence(&base, Anchor::Zero, x_root, gap as usize - 1)?;
    let d = base.degree();
    let n = gap as usize;
    let mut s = ctx.zero();
    for k in n.saturating_sub(d)..n {
        s = s + level_factor(&base, x_root, n - k, k as i64) * &below.coeffs[k];
    }
    Ok(s)
}
