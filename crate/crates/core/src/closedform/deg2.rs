//! The three closed-form solution families of the quadratic variant.
//!
//! With lambda the smaller characteristic exponent at the origin, the three
//! families are:
//!
//! - `g1`: an inverse-power series at infinity with prefactor `x^{-alpha1}`,
//!   whose order-n coefficient is a terminating single sum (a convolution of
//!   two Pochhammer sequences),
//! - `g2`: an ascending Pochhammer series at the node `q^{l_i - 1/2} t_i`
//!   (a root of the `g(qx)` coefficient) with prefactor `x^lambda`,
//! - `g3`: a descending Pochhammer series at the node `q^{h_i + 1/2} t_i`
//!   (a root of the `g(x/q)` coefficient) with prefactor `x^{-alpha1}`.
//!
//! All coefficients are normalized to start at 1. Denominator Pochhammer
//! factors that vanish on special parameter strata surface as
//! `VanishingFactor` errors naming the factor.

use alloc::vec::Vec;

use crate::error::Result;
use crate::frobenius::{Anchor, PowerSeriesSolution};
use crate::qcore::{HalfInt, QContext};
use crate::qdiff::Params2;

use super::{
    poch_prefix, poch_prefix_nonzero, power_prefix, q_factorial_prefix, Orientation,
    PochhammerSeries,
};

fn other_site(i: usize) -> usize {
    match i {
        1 => 2,
        2 => 1,
        _ => panic!("site index must be 1 or 2"),
    }
}

/// Inverse-power solution at infinity for the quadratic variant.
///
/// Returns the branch with exponent `alpha1` (coefficients normalized to
/// `c_0 = 1`); the `alpha2` branch is obtained by swapping the roles of the
/// two exponents, i.e. calling this with `alpha1` and `alpha2` exchanged in
/// the parameter set. The order-n coefficient is
///
/// ```text
/// c_n = q^{n/2} (q^{lambda+alpha1};q)_n / (q^{alpha1-alpha2+1};q)_n
///       * sum_{k=0}^n (q^{lambda+alpha1-h2+l2};q)_k (q^{lambda+alpha1-h1+l1};q)_{n-k}
///         / ((q;q)_k (q;q)_{n-k}) * (q^{l1} t1)^k (q^{l2} t2)^{n-k}
/// ```
///
/// and fails with a named `VanishingFactor` on the stratum
/// `alpha2 - alpha1 in {1, 2, 3, ...}` where the denominator collapses (the
/// resonance at infinity is genuinely logarithmic there).
pub fn g1_series(ctx: &QContext, p2: &Params2, n_max: usize) -> Result<PowerSeriesSolution> {
    let lam = p2.lambda();
    let base = lam + p2.alpha1;
    let outer_num = poch_prefix(ctx, &ctx.qpow(base), n_max);
    let outer_den = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(p2.alpha1 - p2.alpha2 + 1),
        n_max,
        "(q^(alpha1-alpha2+1);q)_n",
    )?;
    let conv_a = poch_prefix(ctx, &ctx.qpow(base - p2.h2 + p2.l2), n_max);
    let conv_b = poch_prefix(ctx, &ctx.qpow(base - p2.h1 + p2.l1), n_max);
    let fac = q_factorial_prefix(ctx, n_max)?;
    let z1 = power_prefix(ctx, &(ctx.qpow(p2.l1) * &p2.t1), n_max);
    let z2 = power_prefix(ctx, &(ctx.qpow(p2.l2) * &p2.t2), n_max);
    let half_steps = power_prefix(ctx, ctx.p(), n_max);

    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut inner = ctx.zero();
        for k in 0..=n {
            let term =
                &conv_a[k] * &conv_b[n - k] / (&fac[k] * &fac[n - k]) * &z1[k] * &z2[n - k];
            inner = inner + term;
        }
        coeffs.push(&half_steps[n] * &outer_num[n] / &outer_den[n] * inner);
    }
    Ok(PowerSeriesSolution {
        anchor: Anchor::Infinity,
        root: ctx.qpow(p2.alpha1),
        exponent: Some(p2.alpha1),
        coeffs,
    })
}

/// Ascending Pochhammer solution at the node `q^{l_i - 1/2} t_i`, `i` in
/// {1, 2}, with prefactor `x^lambda`. The coefficients follow the ratio
///
/// ```text
/// a_{n+1}/a_n = q (1 - q^{lambda+alpha1+n}) (1 - q^{lambda+alpha2+n})
///   / ((1 - q^{h_i-l_i+1+n}) (1 - q^{h_i'-l_i+1+n} t_i'/t_i) (1 - q^{n+1}))
/// ```
///
/// where `i'` is the other site. Truncates (all later coefficients zero)
/// when `lambda + alpha1` or `lambda + alpha2` is a nonpositive integer.
pub fn g2_series(
    ctx: &QContext,
    p2: &Params2,
    i: usize,
    n_max: usize,
) -> Result<PochhammerSeries> {
    let (h, l, t) = p2.site(i);
    let (hp, _, tp) = p2.site(other_site(i));
    let lam = p2.lambda();

    let num_a = poch_prefix(ctx, &ctx.qpow(lam + p2.alpha1), n_max);
    let num_b = poch_prefix(ctx, &ctx.qpow(lam + p2.alpha2), n_max);
    let den_a = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(h - l + 1),
        n_max,
        "(q^(h_i-l_i+1);q)_n",
    )?;
    let den_b = poch_prefix_nonzero(
        ctx,
        &(ctx.qpow(hp - l + 1) * &(tp / t)),
        n_max,
        "(q^(h_i'-l_i+1)t_i'/t_i;q)_n",
    )?;
    let fac = q_factorial_prefix(ctx, n_max)?;
    let qn = power_prefix(ctx, ctx.q(), n_max);

    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        coeffs.push(&qn[n] * &num_a[n] * &num_b[n] / (&den_a[n] * &den_b[n] * &fac[n]));
    }
    Ok(PochhammerSeries {
        prefactor_exponent: lam,
        node: ctx.qpow(l - HalfInt::HALF) * t,
        orientation: Orientation::Ascending,
        coeffs,
    })
}

/// Descending Pochhammer solution at the node `q^{h_i + 1/2} t_i`, `i` in
/// {1, 2}, with prefactor `x^{-alpha1}`. The order-n coefficient is
///
/// ```text
/// c_n = q^n (q^{lambda+alpha1};q)_n / (q^{h_i-l_i'+1} t_i/t_i';q)_n
///       * sum_{k=0}^n (q^{lambda-h_i'+l_i'+alpha1};q)_k q^{k(k+1)/2}
///         (-q^{h_i-l_i'} t_i/t_i')^k
///         / ((q^{h_i-l_i+1};q)_k (q;q)_k (q;q)_{n-k})
/// ```
///
/// The `alpha2` branch again comes from exchanging `alpha1` and `alpha2`.
pub fn g3_series(
    ctx: &QContext,
    p2: &Params2,
    i: usize,
    n_max: usize,
) -> Result<PochhammerSeries> {
    let (h, l, t) = p2.site(i);
    let (hp, lp, tp) = p2.site(other_site(i));
    let lam = p2.lambda();

    let outer_num = poch_prefix(ctx, &ctx.qpow(lam + p2.alpha1), n_max);
    let outer_den = poch_prefix_nonzero(
        ctx,
        &(ctx.qpow(h - lp + 1) * &(t / tp)),
        n_max,
        "(q^(h_i-l_i'+1)t_i/t_i';q)_n",
    )?;
    let inner_num = poch_prefix(ctx, &ctx.qpow(lam - hp + lp + p2.alpha1), n_max);
    let inner_den = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(h - l + 1),
        n_max,
        "(q^(h_i-l_i+1);q)_k",
    )?;
    let fac = q_factorial_prefix(ctx, n_max)?;
    let z = power_prefix(ctx, &-(ctx.qpow(h - lp) * &(t / tp)), n_max);
    let qn = power_prefix(ctx, ctx.q(), n_max);

    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut inner = ctx.zero();
        for k in 0..=n {
            let term = &inner_num[k] * ctx.qpow_triangular(k as i64) * &z[k]
                / (&inner_den[k] * &fac[k] * &fac[n - k]);
            inner = inner + term;
        }
        coeffs.push(&qn[n] * &outer_num[n] / &outer_den[n] * inner);
    }
    Ok(PochhammerSeries {
        prefactor_exponent: -p2.alpha1,
        node: ctx.qpow(h + HalfInt::HALF) * t,
        orientation: Orientation::Descending,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{phi21_coeffs, phi32_hahn, phi32_hahn_series};
    use super::*;
    use crate::frobenius::local_series_infinity;
    use crate::qdiff::{make_qhypergeometric, make_variant_deg2};

    fn ctx_half() -> QContext {
        QContext::exact(1, 2).unwrap()
    }

    /// h1 = 3/2, h2 = 0, l1 = l2 = 0, alpha1 = 0, alpha2 = 3/2,
    /// t1 = 1, t2 = 2. The exponent gap at infinity is 3/2, so no
    /// resonance interferes at either anchor, and lambda = 1/2.
    fn generic_params(ctx: &QContext) -> Params2 {
        Params2::new(
            ctx,
            HalfInt::new(3),
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::new(3),
            ctx.int(1),
            ctx.int(2),
        )
        .unwrap()
    }

    #[test]
    fn g1_matches_the_frobenius_series_at_infinity() {
        let ctx = ctx_half();
        let p2 = generic_params(&ctx);
        let eq = make_variant_deg2(&ctx, &p2).unwrap();
        let g1 = g1_series(&ctx, &p2, 24).unwrap();
        let frob = local_series_infinity(&eq, &g1.root, 24).unwrap();
        assert_eq!(g1.coeffs, frob.coeffs);
        assert_eq!(g1.exponent, Some(HalfInt::ZERO));
    }

    #[test]
    fn g1_is_invariant_under_the_site_swap() {
        let ctx = ctx_half();
        let p2 = generic_params(&ctx);
        let a = g1_series(&ctx, &p2, 16).unwrap();
        let b = g1_series(&ctx, &p2.swapped(), 16).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn g1_fails_by_name_on_the_logarithmic_stratum() {
        // alpha2 - alpha1 = 1 makes the denominator (q^0;q)_n vanish at
        // its very first factor.
        let ctx = ctx_half();
        let p2 = Params2::new(
            &ctx,
            HalfInt::from_int(1),
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::from_int(1),
            ctx.int(1),
            ctx.int(2),
        )
        .unwrap();
        let err = g1_series(&ctx, &p2, 8).unwrap_err();
        assert_eq!(
            err,
            crate::error::Error::VanishingFactor {
                factor: "(q^(alpha1-alpha2+1);q)_n".into(),
                n: 0
            }
        );
    }

    #[test]
    fn g2_first_coefficient_matches_the_printed_ratio() {
        let ctx = ctx_half();
        let p2 = generic_params(&ctx);
        let lam = p2.lambda();
        let g2 = g2_series(&ctx, &p2, 1, 6).unwrap();
        // a_1 = q (1-q^{lam+a1})(1-q^{lam+a2})
        //       / ((1-q^{h1-l1+1})(1-q^{h2-l1+1}t2/t1)(1-q)).
        let num = ctx.q()
            * ctx.qpoch_ratio_step(&ctx.qpow(lam + p2.alpha1), 0)
            * ctx.qpoch_ratio_step(&ctx.qpow(lam + p2.alpha2), 0);
        let den = ctx.qpoch_ratio_step(&ctx.qpow(p2.h1 - p2.l1 + 1), 0)
            * ctx.qpoch_ratio_step(&(ctx.qpow(p2.h2 - p2.l1 + 1) * &(&p2.t2 / &p2.t1)), 0)
            * ctx.qpoch_ratio_step(ctx.q(), 0);
        assert_eq!(g2.coeffs[1], num / den);
        assert_eq!(g2.prefactor_exponent, lam);
        assert_eq!(g2.node, ctx.qpow(p2.l1 - HalfInt::HALF) * &p2.t1);
        assert_eq!(g2.orientation, Orientation::Ascending);
    }

    #[test]
    fn g2_truncates_when_the_numerator_exponent_is_a_nonpositive_integer() {
        // All h, l zero with alpha1 = 3: lambda = -1, so the numerator
        // factor (q^{lambda+alpha2};q)_n = (q^{-1};q)_n kills every n >= 2,
        // while both denominator bases stay off the integer grid.
        let ctx = ctx_half();
        let p2 = Params2::new(
            &ctx,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::from_int(3),
            HalfInt::ZERO,
            ctx.int(1),
            ctx.int(3),
        )
        .unwrap();
        assert_eq!(p2.lambda(), HalfInt::from_int(-1));
        let g2 = g2_series(&ctx, &p2, 1, 8).unwrap();
        assert!(!g2.coeffs[1].is_zero());
        for n in 2..=8 {
            assert!(g2.coeffs[n].is_zero(), "order {n} should have truncated");
        }
    }

    #[test]
    fn g3_leading_coefficients_match_a_hand_expansion() {
        let ctx = ctx_half();
        let p2 = generic_params(&ctx);
        let lam = p2.lambda();
        let g3 = g3_series(&ctx, &p2, 1, 4).unwrap();
        assert_eq!(g3.coeffs[0], ctx.one());
        // c_1 = q (1-q^{lam+a1}) / (1-q^{h1-l2+1}t1/t2) * [ inner(1) ]
        // inner(1) = 1/(q;q)_1
        //          + (1-q^{lam-h2+l2+a1}) q (-q^{h1-l2}t1/t2)
        //            / ((1-q^{h1-l1+1})(q;q)_1).
        let w = ctx.qpow(p2.h1 - p2.l2) * &(&p2.t1 / &p2.t2);
        let fac1 = ctx.qpoch_ratio_step(ctx.q(), 0);
        let inner = fac1.recip()
            + ctx.qpoch_ratio_step(&ctx.qpow(lam - p2.h2 + p2.l2 + p2.alpha1), 0)
                * ctx.q()
                * -&w
                / (ctx.qpoch_ratio_step(&ctx.qpow(p2.h1 - p2.l1 + 1), 0) * &fac1);
        let c1 = ctx.q() * ctx.qpoch_ratio_step(&ctx.qpow(lam + p2.alpha1), 0)
            / ctx.qpoch_ratio_step(&(ctx.qpow(p2.h1 - p2.l2 + 1) * &(&p2.t1 / &p2.t2)), 0)
            * inner;
        assert_eq!(g3.coeffs[1], c1);
        assert_eq!(g3.prefactor_exponent, HalfInt::ZERO - p2.alpha1);
        assert_eq!(g3.node, ctx.qpow(p2.h1 + HalfInt::HALF) * &p2.t1);
        assert_eq!(g3.orientation, Orientation::Descending);
    }

    #[test]
    fn phi21_solves_the_q_hypergeometric_equation_at_the_unit_root() {
        let ctx = ctx_half();
        let (a, b, c) = (ctx.rat(1, 2), ctx.rat(1, 3), ctx.rat(1, 5));
        let eq = make_qhypergeometric(&ctx, &a, &b, &c).unwrap();
        let coeffs = phi21_coeffs(&ctx, &a, &b, &c, 20).unwrap();
        let frob = crate::frobenius::local_series_zero(&eq, &ctx.one(), 20).unwrap();
        assert_eq!(coeffs, frob.coeffs);
        // Frozen leading values, checked by hand from the ratio formula.
        assert_eq!(coeffs[1], ctx.rat(5, 9));
        assert_eq!(coeffs[2], ctx.rat(770, 1539));
    }

    #[test]
    fn hahn_series_evaluates_to_one_at_its_node() {
        // Every basis element (abx/c;q)_n with n >= 1 vanishes at
        // x = c/(ab), so the partial sum collapses to its constant term.
        let ctx = ctx_half();
        let (a, b, c) = (ctx.rat(1, 2), ctx.rat(1, 3), ctx.rat(1, 5));
        let node = &c / &(&a * &b);
        let value = phi32_hahn(&ctx, &a, &b, &c, &node, 12).unwrap();
        assert_eq!(value, ctx.one());
        let series = phi32_hahn_series(&ctx, &a, &b, &c, 12).unwrap();
        assert_eq!(series.node, node);
        assert_eq!(series.prefactor_exponent, HalfInt::ZERO);
    }

    #[test]
    fn float_mode_tracks_exact_g1_coefficients() {
        let e = ctx_half();
        let f = QContext::float_re(0.5).unwrap();
        let pe = generic_params(&e);
        let pf = Params2::new(
            &f,
            pe.h1,
            pe.h2,
            pe.l1,
            pe.l2,
            pe.alpha1,
            pe.alpha2,
            f.int(1),
            f.int(2),
        )
        .unwrap();
        let ge = g1_series(&e, &pe, 12).unwrap();
        let gf = g1_series(&f, &pf, 12).unwrap();
        for (a, b) in ge.coeffs.iter().zip(&gf.coeffs) {
            assert!((a.magnitude() - b.magnitude()).abs() <= 1e-10 * a.magnitude().max(1.0));
        }
    }
}
