//! Constructors for the four equation families.

use alloc::vec;

use crate::error::Result;
use crate::qcore::{HalfInt, QContext, Scalar};

use super::{Params2, Params3, Poly, QDifferenceEquation};

/// The q-hypergeometric equation with parameters (a, b, c):
///
/// ```text
/// u = (x − q),   v = −((a+b)·x − q − c),   w = a·b·x − c.
/// ```
///
/// Its power-series solution at x = 0 is the ₂φ₁ series in x with those
/// parameters (as q-powers).
pub fn make_qhypergeometric(
    ctx: &QContext,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<QDifferenceEquation> {
    ctx.check_mode(a, "a")?;
    ctx.check_mode(b, "b")?;
    ctx.check_mode(c, "c")?;
    let q = ctx.q();
    let u = Poly::from_coeffs(vec![-q, ctx.one()]);
    let v = Poly::from_coeffs(vec![q + c, -(a + b)]);
    let w = Poly::from_coeffs(vec![-c, a * b]);
    QDifferenceEquation::new(ctx.clone(), u, v, w)
}

/// The degree-two equation with free accessory parameters β and E:
///
/// ```text
/// u = (x − q^{h₁+1/2}t₁)(x − q^{h₂+1/2}t₂)
/// v = −[(q^{α₁}+q^{α₂})x² + E·x + q^{σ/2}(q^{β/2}+q^{−β/2})t₁t₂]
/// w = q^{α₁+α₂}(x − q^{l₁−1/2}t₁)(x − q^{l₂−1/2}t₂)
/// ```
///
/// with σ = h₁+h₂+l₁+l₂+α₁+α₂. In exact mode β must be an integer (q^{β/2}
/// is then a power of p).
pub fn make_qheun(
    ctx: &QContext,
    params: &Params2,
    beta: HalfInt,
    e_coeff: &Scalar,
) -> Result<QDifferenceEquation> {
    ctx.check_mode(e_coeff, "E")?;
    let beta_term = ctx.half_qpow(beta)? + ctx.half_qpow(-beta)?;
    let (u, w) = outer_polys_deg2(ctx, params);
    let c0 = ctx.qpow(params.sigma_half()) * beta_term * &params.t1 * &params.t2;
    let c2 = ctx.qpow(params.alpha1) + ctx.qpow(params.alpha2);
    let v = Poly::from_coeffs(vec![-c0, -e_coeff, -c2]);
    QDifferenceEquation::new(ctx.clone(), u, v, w)
}

/// The accessory coefficient E that turns the degree-two equation with β = 1
/// into the distinguished variant:
///
/// ```text
/// E = −q^{σ/2}·[(q^{−h₂}+q^{−l₂})t₁ + (q^{−h₁}+q^{−l₁})t₂].
/// ```
pub fn variant_deg2_e_coeff(ctx: &QContext, params: &Params2) -> Scalar {
    let s1 = (ctx.qpow(-params.h2) + ctx.qpow(-params.l2)) * &params.t1;
    let s2 = (ctx.qpow(-params.h1) + ctx.qpow(-params.l1)) * &params.t2;
    -(ctx.qpow(params.sigma_half()) * (s1 + s2))
}

/// The distinguished degree-two variant: β = 1 and E pinned by
/// [`variant_deg2_e_coeff`]. Its characteristic exponents are λ, λ+1 at
/// x = 0 and α₁, α₂ at x = ∞, and the unit gap at 0 is apparent.
pub fn make_variant_deg2(ctx: &QContext, params: &Params2) -> Result<QDifferenceEquation> {
    let e_coeff = variant_deg2_e_coeff(ctx, params);
    make_qheun(ctx, params, HalfInt::from_int(1), &e_coeff)
}

fn outer_polys_deg2(ctx: &QContext, params: &Params2) -> (Poly, Poly) {
    let u = Poly::linear_from_root(&(ctx.qpow(params.h1 + HalfInt::HALF) * &params.t1)).mul(
        &Poly::linear_from_root(&(ctx.qpow(params.h2 + HalfInt::HALF) * &params.t2)),
    );
    let w = Poly::linear_from_root(&(ctx.qpow(params.l1 - HalfInt::HALF) * &params.t1))
        .mul(&Poly::linear_from_root(
            &(ctx.qpow(params.l2 - HalfInt::HALF) * &params.t2),
        ))
        .scale(&ctx.qpow(params.alpha1 + params.alpha2));
    (u, w)
}

/// The degree-two variant polynomials without the [`Params2`] nonzero-t
/// validation, so degeneration code can set t₂ = 0. Parities must still
/// hold.
#[allow(clippy::too_many_arguments)]
pub(crate) fn variant_deg2_polys_unchecked(
    ctx: &QContext,
    h1: HalfInt,
    h2: HalfInt,
    l1: HalfInt,
    l2: HalfInt,
    alpha1: HalfInt,
    alpha2: HalfInt,
    t1: &Scalar,
    t2: &Scalar,
) -> (Poly, Poly, Poly) {
    let sigma_half = (h1 + h2 + l1 + l2 + alpha1 + alpha2)
        .try_halve()
        .expect("parity violation in unchecked degree-two builder");
    let u = Poly::linear_from_root(&(ctx.qpow(h1 + HalfInt::HALF) * t1)).mul(
        &Poly::linear_from_root(&(ctx.qpow(h2 + HalfInt::HALF) * t2)),
    );
    let w = Poly::linear_from_root(&(ctx.qpow(l1 - HalfInt::HALF) * t1))
        .mul(&Poly::linear_from_root(&(ctx.qpow(l2 - HalfInt::HALF) * t2)))
        .scale(&ctx.qpow(alpha1 + alpha2));
    let e_coeff = -(ctx.qpow(sigma_half)
        * ((ctx.qpow(-h2) + ctx.qpow(-l2)) * t1 + (ctx.qpow(-h1) + ctx.qpow(-l1)) * t2));
    let beta_term = ctx.p() + ctx.p().recip();
    let c0 = ctx.qpow(sigma_half) * beta_term * t1 * t2;
    let c2 = ctx.qpow(alpha1) + ctx.qpow(alpha2);
    let v = Poly::from_coeffs(vec![-c0, -e_coeff, -c2]);
    (u, v, w)
}

/// The distinguished degree-three variant:
///
/// ```text
/// u = ∏ᵢ (x − q^{hᵢ+1/2}tᵢ)
/// w = q^{2α+1}·∏ᵢ (x − q^{lᵢ−1/2}tᵢ)
/// v = q^α·[ −(q+1)x³ + q^{1/2}(Σᵢ (q^{hᵢ}+q^{lᵢ})tᵢ)x²
///           − q^{(Σh+Σl+1)/2}(Σᵢ (q^{−hᵢ}+q^{−lᵢ})·t_j t_k)x
///           + q^{(Σh+Σl)/2}(q+1)t₁t₂t₃ ]
/// ```
///
/// where (i, j, k) runs over the three splittings of {1, 2, 3}. Exponents
/// are ν−α, ν−α+1 at x = 0 and α, α+1 at x = ∞, both gaps apparent.
pub fn make_variant_deg3(ctx: &QContext, params: &Params3) -> Result<QDifferenceEquation> {
    let q = ctx.q();
    let sum_all_half = params
        .sum_all()
        .try_halve()
        .expect("parity was checked at construction");

    let mut u = Poly::constant(ctx.one());
    let mut w = Poly::constant(ctx.qpow(params.alpha * 2 + 1));
    for i in 1..=3 {
        let (h, l, t) = params.site(i);
        u = u.mul(&Poly::linear_from_root(&(ctx.qpow(h + HalfInt::HALF) * t)));
        w = w.mul(&Poly::linear_from_root(&(ctx.qpow(l - HalfInt::HALF) * t)));
    }

    let c3 = -(ctx.one() + q);
    let mut c2 = ctx.zero();
    for i in 1..=3 {
        let (h, l, t) = params.site(i);
        c2 = c2 + (ctx.qpow(h) + ctx.qpow(l)) * t;
    }
    c2 = ctx.qpow(HalfInt::HALF) * c2;
    let mut c1 = ctx.zero();
    for (i, j, k) in [(1, 2, 3), (2, 1, 3), (3, 1, 2)] {
        let (h, l, _) = params.site(i);
        let (_, _, tj) = params.site(j);
        let (_, _, tk) = params.site(k);
        c1 = c1 + (ctx.qpow(-h) + ctx.qpow(-l)) * tj * tk;
    }
    c1 = -(ctx.qpow(sum_all_half + HalfInt::HALF) * c1);
    let c0 = ctx.qpow(sum_all_half)
        * (ctx.one() + q)
        * &params.t[0]
        * &params.t[1]
        * &params.t[2];

    let v = Poly::from_coeffs(vec![c0, c1, c2, c3]).scale(&ctx.qpow(params.alpha));
    QDifferenceEquation::new(ctx.clone(), u, v, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::exact(1, 2).unwrap()
    }

    fn sample_params2(c: &QContext) -> Params2 {
        Params2::new(
            c,
            HalfInt::from_int(1),
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::from_int(1),
            c.one(),
            c.int(2),
        )
        .unwrap()
    }

    fn sample_params3(c: &QContext) -> Params3 {
        Params3::new(
            c,
            [HalfInt::from_int(1), HalfInt::new(1), HalfInt::ZERO],
            [HalfInt::ZERO, HalfInt::new(-1), HalfInt::from_int(-1)],
            HalfInt::new(1),
            [c.one(), c.int(2), c.rat(1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn qhypergeometric_coefficients_frozen() {
        // q = 1/4, (a, b, c) = (1/2, 1/3, 1/5).
        let c = ctx();
        let eq =
            make_qhypergeometric(&c, &c.rat(1, 2), &c.rat(1, 3), &c.rat(1, 5)).unwrap();
        assert_eq!(eq.u().coeffs(), &[c.rat(-1, 4), c.one()]);
        assert_eq!(eq.v().coeffs(), &[c.rat(9, 20), c.rat(-5, 6)]);
        assert_eq!(eq.w().coeffs(), &[c.rat(-1, 5), c.rat(1, 6)]);
    }

    #[test]
    fn variant_deg2_coefficients_frozen() {
        // p = 1/2, h = (1, 0), l = (0, 0), alpha = (0, 1), t = (1, 2),
        // worked out by hand from the closed formulas.
        let c = ctx();
        let eq = make_variant_deg2(&c, &sample_params2(&c)).unwrap();
        assert_eq!(eq.u().coeffs(), &[c.rat(1, 8), c.rat(-9, 8), c.one()]);
        assert_eq!(eq.v().coeffs(), &[c.rat(-5, 4), c.int(3), c.rat(-5, 4)]);
        assert_eq!(eq.w().coeffs(), &[c.int(2), c.rat(-3, 2), c.rat(1, 4)]);
    }

    #[test]
    fn variant_deg2_is_qheun_with_beta_one() {
        let c = ctx();
        let p2 = sample_params2(&c);
        let e_coeff = variant_deg2_e_coeff(&c, &p2);
        let via_qheun = make_qheun(&c, &p2, HalfInt::from_int(1), &e_coeff).unwrap();
        let direct = make_variant_deg2(&c, &p2).unwrap();
        assert_eq!(via_qheun.u(), direct.u());
        assert_eq!(via_qheun.v(), direct.v());
        assert_eq!(via_qheun.w(), direct.w());
    }

    #[test]
    fn qheun_rejects_half_odd_beta_in_exact_mode() {
        let c = ctx();
        let p2 = sample_params2(&c);
        let e = variant_deg2_e_coeff(&c, &p2);
        assert!(make_qheun(&c, &p2, HalfInt::new(1), &e).is_err());
        // Float mode accepts it.
        let f = QContext::float_re(0.5).unwrap();
        let p2f = Params2::new(
            &f,
            HalfInt::from_int(1),
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::from_int(1),
            f.one(),
            f.int(2),
        )
        .unwrap();
        let ef = variant_deg2_e_coeff(&f, &p2f);
        assert!(make_qheun(&f, &p2f, HalfInt::new(1), &ef).is_ok());
    }

    #[test]
    fn variant_deg2_unchecked_matches_checked() {
        let c = ctx();
        let p2 = sample_params2(&c);
        let eq = make_variant_deg2(&c, &p2).unwrap();
        let (u, v, w) = variant_deg2_polys_unchecked(
            &c, p2.h1, p2.h2, p2.l1, p2.l2, p2.alpha1, p2.alpha2, &p2.t1, &p2.t2,
        );
        assert_eq!(&u, eq.u());
        assert_eq!(&v, eq.v());
        assert_eq!(&w, eq.w());
    }

    #[test]
    fn variant_deg2_site_swap_is_invisible() {
        let c = ctx();
        let p2 = sample_params2(&c);
        let eq = make_variant_deg2(&c, &p2).unwrap();
        let swapped = make_variant_deg2(&c, &p2.swapped()).unwrap();
        assert_eq!(eq.u(), swapped.u());
        assert_eq!(eq.v(), swapped.v());
        assert_eq!(eq.w(), swapped.w());
    }

    #[test]
    fn variant_deg2_characteristic_roots_by_vieta() {
        // At 0 the roots of w0·X² + v0·X + u0 must be q^λ and q^{λ+1}; at ∞
        // the roots of u2·X² + v2·X + w2 must be q^{α₁} and q^{α₂}.
        let c = ctx();
        let p2 = sample_params2(&c);
        let lam = p2.lambda();
        let eq = make_variant_deg2(&c, &p2).unwrap();
        let (u0, v0, w0) = (
            eq.u().coeff_or_zero(0, &c),
            eq.v().coeff_or_zero(0, &c),
            eq.w().coeff_or_zero(0, &c),
        );
        assert_eq!(
            &w0 * c.qpow(lam) * c.qpow(lam + 1),
            u0,
            "product of roots at 0"
        );
        assert_eq!(
            -&v0,
            &w0 * (c.qpow(lam) + c.qpow(lam + 1)),
            "sum of roots at 0"
        );
        let (u2, v2, w2) = (
            eq.u().coeff_or_zero(2, &c),
            eq.v().coeff_or_zero(2, &c),
            eq.w().coeff_or_zero(2, &c),
        );
        assert_eq!(&u2 * c.qpow(p2.alpha1) * c.qpow(p2.alpha2), w2);
        assert_eq!(-&v2, &u2 * (c.qpow(p2.alpha1) + c.qpow(p2.alpha2)));
    }

    #[test]
    fn variant_deg3_characteristic_roots_by_vieta() {
        let c = ctx();
        let p3 = sample_params3(&c);
        let eq = make_variant_deg3(&c, &p3).unwrap();
        let nu = p3.nu();
        let rho = nu - p3.alpha;
        let (u0, v0, w0) = (
            eq.u().coeff_or_zero(0, &c),
            eq.v().coeff_or_zero(0, &c),
            eq.w().coeff_or_zero(0, &c),
        );
        assert_eq!(&w0 * c.qpow(rho) * c.qpow(rho + 1), u0);
        assert_eq!(-&v0, &w0 * (c.qpow(rho) + c.qpow(rho + 1)));
        let (u3, v3, w3) = (
            eq.u().coeff_or_zero(3, &c),
            eq.v().coeff_or_zero(3, &c),
            eq.w().coeff_or_zero(3, &c),
        );
        assert_eq!(&u3 * c.qpow(p3.alpha) * c.qpow(p3.alpha + 1), w3);
        assert_eq!(-&v3, &u3 * (c.qpow(p3.alpha) + c.qpow(p3.alpha + 1)));
    }

    #[test]
    fn variant_deg3_site_permutation_is_invisible() {
        let c = ctx();
        let p3 = sample_params3(&c);
        let eq = make_variant_deg3(&c, &p3).unwrap();
        for perm in [[2, 1, 3], [3, 1, 2], [1, 3, 2], [2, 3, 1], [3, 2, 1]] {
            let other = make_variant_deg3(&c, &p3.permuted(perm)).unwrap();
            assert_eq!(eq.u(), other.u(), "perm {perm:?}");
            assert_eq!(eq.v(), other.v(), "perm {perm:?}");
            assert_eq!(eq.w(), other.w(), "perm {perm:?}");
        }
    }

    #[test]
    fn variant_deg2_with_zero_t2_is_divisible_by_x() {
        let c = ctx();
        let p2 = sample_params2(&c);
        let (u, v, w) = variant_deg2_polys_unchecked(
            &c, p2.h1, p2.h2, p2.l1, p2.l2, p2.alpha1, p2.alpha2, &p2.t1, &c.zero(),
        );
        assert!(u.div_x().is_ok());
        assert!(v.div_x().is_ok());
        assert!(w.div_x().is_ok());
    }
}
