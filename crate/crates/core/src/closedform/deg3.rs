//! Conjectural solution families of the cubic variant, and the residual
//! harness that collects evidence for them.
//!
//! Nothing here asserts the families actually solve the equation; the
//! series are built exactly as displayed, and [`verify_conjecture`] applies
//! the operator to a truncation and reports the interior residual. In exact
//! mode a passing instance means the residual is the literal rational zero
//! on every interior order, which is strong per-draw evidence but still
//! only evidence.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qcore::{HalfInt, QContext, Scalar};
use crate::qdiff::{make_variant_deg3, Params3};

use super::{
    operator_residual_in_basis, poch_prefix, poch_prefix_nonzero, power_prefix,
    q_factorial_prefix, Orientation, PochhammerSeries,
};

/// The two conjectural families for the cubic variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjFamily {
    /// Ascending series at the node `q^{l_i - 1/2} t_i` with prefactor
    /// `x^{nu - alpha}`.
    I,
    /// Descending series at the node `q^{h_i + 1/2} t_i` with prefactor
    /// `x^{-alpha}`.
    II,
}

pub(crate) fn check_perm(perm: [usize; 3]) -> Result<()> {
    let mut seen = [false; 3];
    for p in perm {
        if !(1..=3).contains(&p) || seen[p - 1] {
            return Err(Error::InvalidParameter(String::from(
                "perm must be a permutation of (1, 2, 3)",
            )));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// The conjectural series for the cubic variant, family `I` or `II`, for
/// the site permutation `(i, i', i'')`, truncated at order `n_max`.
///
/// Both families share the inner kernel
///
/// ```text
/// c_{n,k',k''} = q^{s(s+1)/2} (q^{nu-h_i'+l_i'};q)_{k'} (q^{nu-h_i''+l_i''};q)_{k''}
///   / ((q;q)_{n-s} (q;q)_{k'} (q;q)_{k''} (q^{h_i-l_i+1};q)_s),    s = k' + k'',
/// ```
///
/// summed against geometric weights in the two site ratios; the families
/// differ in the outer Pochhammer denominators, the node, and the
/// orientation. Coefficients are normalized to start at 1.
pub fn conj3_series(
    ctx: &QContext,
    p3: &Params3,
    family: ConjFamily,
    perm: [usize; 3],
    n_max: usize,
) -> Result<PochhammerSeries> {
    check_perm(perm)?;
    let (h_i, l_i, t_i) = p3.site(perm[0]);
    let (h_p, l_p, t_p) = p3.site(perm[1]);
    let (h_pp, l_pp, t_pp) = p3.site(perm[2]);
    let nu = p3.nu();

    // Outer denominators and geometric weights, family-dependent.
    let (den_a_base, den_a_label, den_b_base, den_b_label, z_p_base, z_pp_base) = match family {
        ConjFamily::I => (
            ctx.qpow(h_p - l_i + 1) * &(t_p / t_i),
            "(q^(h_i'-l_i+1)t_i'/t_i;q)_n",
            ctx.qpow(h_pp - l_i + 1) * &(t_pp / t_i),
            "(q^(h_i''-l_i+1)t_i''/t_i;q)_n",
            ctx.qpow(h_p - l_i) * &(t_p / t_i),
            ctx.qpow(h_pp - l_i) * &(t_pp / t_i),
        ),
        ConjFamily::II => (
            ctx.qpow(h_i - l_p + 1) * &(t_i / t_p),
            "(q^(h_i-l_i'+1)t_i/t_i';q)_n",
            ctx.qpow(h_i - l_pp + 1) * &(t_i / t_pp),
            "(q^(h_i-l_i''+1)t_i/t_i'';q)_n",
            ctx.qpow(h_i - l_p) * &(t_i / t_p),
            ctx.qpow(h_i - l_pp) * &(t_i / t_pp),
        ),
    };

    let outer_num = poch_prefix(ctx, &ctx.qpow(nu), n_max);
    let den_a = poch_prefix_nonzero(ctx, &den_a_base, n_max, den_a_label)?;
    let den_b = poch_prefix_nonzero(ctx, &den_b_base, n_max, den_b_label)?;
    let kern_p = poch_prefix(ctx, &ctx.qpow(nu - h_p + l_p), n_max);
    let kern_pp = poch_prefix(ctx, &ctx.qpow(nu - h_pp + l_pp), n_max);
    let kern_den = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(h_i - l_i + 1),
        n_max,
        "(q^(h_i-l_i+1);q)_(k'+k'')",
    )?;
    let fac = q_factorial_prefix(ctx, n_max)?;
    let z_p = power_prefix(ctx, &-&z_p_base, n_max);
    let z_pp = power_prefix(ctx, &-&z_pp_base, n_max);
    let qn = power_prefix(ctx, ctx.q(), n_max);

    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut inner = ctx.zero();
        for kp in 0..=n {
            for kpp in 0..=(n - kp) {
                let s = kp + kpp;
                let kernel = ctx.qpow_triangular(s as i64) * &kern_p[kp] * &kern_pp[kpp]
                    / (&fac[n - s] * &fac[kp] * &fac[kpp] * &kern_den[s]);
                inner = inner + kernel * &z_p[kp] * &z_pp[kpp];
            }
        }
        coeffs.push(&qn[n] * &outer_num[n] / (&den_a[n] * &den_b[n]) * inner);
    }

    let (prefactor_exponent, node, orientation) = match family {
        ConjFamily::I => (
            nu - p3.alpha,
            ctx.qpow(l_i - HalfInt::HALF) * t_i,
            Orientation::Ascending,
        ),
        ConjFamily::II => (
            -p3.alpha,
            ctx.qpow(h_i + HalfInt::HALF) * t_i,
            Orientation::Descending,
        ),
    };
    Ok(PochhammerSeries {
        prefactor_exponent,
        node,
        orientation,
        coeffs,
    })
}

/// Evidence record from one conjecture instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    /// Truncation order the series was built to.
    pub n_trunc: usize,
    /// Number of interior orders inspected (orders 0 through `n_trunc - 3`).
    pub orders_checked: usize,
    /// The interior residual coefficient of largest magnitude; exactly zero
    /// (as a rational) on a passing exact-mode instance.
    pub max_interior_residual: Scalar,
}

impl ConjectureReport {
    /// Whether the interior residual vanished (literally in exact mode,
    /// within `tol` in float mode).
    pub fn passes(&self, tol: f64) -> bool {
        if self.max_interior_residual.is_exact() {
            self.max_interior_residual.is_zero()
        } else {
            self.max_interior_residual.magnitude() <= tol
        }
    }
}

/// Builds the cubic-variant operator, applies it to the truncated
/// conjectural series, re-expands the result in the same Pochhammer basis,
/// and reports the largest residual among interior orders `n <= n_max - 3`.
pub fn verify_conjecture(
    ctx: &QContext,
    p3: &Params3,
    family: ConjFamily,
    perm: [usize; 3],
    n_max: usize,
) -> Result<ConjectureReport> {
    let eq = make_variant_deg3(ctx, p3)?;
    let series = conj3_series(ctx, p3, family, perm, n_max)?;
    let residual = operator_residual_in_basis(&eq, &series)?;
    let interior_end = n_max.saturating_sub(3);
    let mut max = ctx.zero();
    for r in residual.iter().take(interior_end + 1) {
        if r.magnitude() > max.magnitude() {
            max = r.clone();
        }
    }
    Ok(ConjectureReport {
        n_trunc: n_max,
        orders_checked: interior_end + 1,
        max_interior_residual: max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdiff::Params3;

    fn ctx_half() -> QContext {
        QContext::exact(1, 2).unwrap()
    }

    fn sample_params3(ctx: &QContext) -> Params3 {
        Params3::new(
            ctx,
            [HalfInt::from_int(1), HalfInt::HALF, HalfInt::ZERO],
            [HalfInt::ZERO, HalfInt::new(-1), HalfInt::from_int(-1)],
            HalfInt::HALF,
            [ctx.int(1), ctx.int(2), ctx.rat(1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_a_non_permutation() {
        let ctx = ctx_half();
        let p3 = sample_params3(&ctx);
        assert!(conj3_series(&ctx, &p3, ConjFamily::I, [1, 1, 2], 4).is_err());
        assert!(conj3_series(&ctx, &p3, ConjFamily::I, [0, 1, 2], 4).is_err());
    }

    #[test]
    fn series_is_symmetric_in_the_two_secondary_sites() {
        let ctx = ctx_half();
        let p3 = sample_params3(&ctx);
        for family in [ConjFamily::I, ConjFamily::II] {
            let a = conj3_series(&ctx, &p3, family, [1, 2, 3], 8).unwrap();
            let b = conj3_series(&ctx, &p3, family, [1, 3, 2], 8).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn family_one_interior_residual_is_exactly_zero() {
        let ctx = ctx_half();
        let p3 = sample_params3(&ctx);
        for perm in [[1, 2, 3], [2, 1, 3], [3, 1, 2]] {
            let report = verify_conjecture(&ctx, &p3, ConjFamily::I, perm, 10).unwrap();
            assert!(
                report.max_interior_residual.is_zero(),
                "perm {perm:?}: residual {}",
                report.max_interior_residual
            );
            assert_eq!(report.orders_checked, 8);
        }
    }

    #[test]
    fn family_two_interior_residual_is_exactly_zero() {
        let ctx = ctx_half();
        let p3 = sample_params3(&ctx);
        for perm in [[1, 2, 3], [2, 1, 3], [3, 1, 2]] {
            let report = verify_conjecture(&ctx, &p3, ConjFamily::II, perm, 10).unwrap();
            assert!(
                report.max_interior_residual.is_zero(),
                "perm {perm:?}: residual {}",
                report.max_interior_residual
            );
        }
    }

    #[test]
    fn residual_support_sits_at_the_truncation_boundary() {
        let ctx = ctx_half();
        let p3 = sample_params3(&ctx);
        let eq = make_variant_deg3(&ctx, &p3).unwrap();
        let n = 9;
        for family in [ConjFamily::I, ConjFamily::II] {
            let series = conj3_series(&ctx, &p3, family, [1, 2, 3], n).unwrap();
            let residual = operator_residual_in_basis(&eq, &series).unwrap();
            for (m, r) in residual.iter().enumerate() {
                if m < n {
                    assert!(r.is_zero(), "{family:?} interior order {m} is {r}");
                }
            }
            assert!(residual[n..].iter().any(|r| !r.is_zero()));
        }
    }

    #[test]
    fn perturbing_a_coefficient_is_detected() {
        let ctx = ctx_half();
        let p3 = sample_params3(&ctx);
        let eq = make_variant_deg3(&ctx, &p3).unwrap();
        let mut series = conj3_series(&ctx, &p3, ConjFamily::I, [1, 2, 3], 10).unwrap();
        series.coeffs[2] = &series.coeffs[2] + &ctx.one();
        let residual = operator_residual_in_basis(&eq, &series).unwrap();
        assert!(
            residual[..8].iter().any(|r| !r.is_zero()),
            "corrupting c_2 must break an interior order"
        );
    }
}
