//! Degeneration limits down the equation hierarchy and the q → 1 continuum.
//!
//! Three flows are covered, each with an exact verification path and a
//! numeric convergence diagnostic:
//!
//! - sending the third location of the cubic variant to infinity, which
//!   produces the quadratic variant: operator-level, by exact affine
//!   extraction in the reciprocal location ([`deg3_limit_equation`]), and
//!   coefficient-level for the conjectural solution families
//!   ([`conj3_limit_series`]),
//! - sending the second location of the quadratic variant to zero, which
//!   leaves a degree-one three-term equation recovering the classical
//!   q-hypergeometric operator on a restricted parameter stratum
//!   ([`degenerate_deg2_to_qhyp`]), together with the limits of all four
//!   solution families that survive,
//! - letting q → 1 with fixed locations, where the normalized equations
//!   become second-order Fuchsian differential equations with explicit
//!   Riemann schemes ([`continuum_ode_deg2`], [`continuum_ode_deg3`]) and a
//!   reduction to hypergeometric normal form ([`gauss_reduction_deg2`],
//!   [`gauss_reduction_deg3`]).
//!
//! Everything algebraic runs in exact arithmetic; the ladder diagnostics
//! ([`LimitReport`]) quantify first-order convergence rates numerically.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::closedform::{
    check_perm, conj3_series, poch_prefix, poch_prefix_nonzero, power_prefix,
    q_factorial_prefix, ConjFamily, Orientation, PochhammerSeries,
};
use crate::error::{Error, Result};
use crate::frobenius::{Anchor, PowerSeriesSolution};
use crate::qcore::{HalfInt, QContext, Scalar};
use crate::qdiff::{
    make_variant_deg2, make_variant_deg3, variant_deg2_polys_unchecked, Params2, Params3, Poly,
    QDifferenceEquation,
};

/// A half-integer as a plain scalar value (not a q-power).
fn half_scalar(ctx: &QContext, e: HalfInt) -> Scalar {
    ctx.rat(e.twice, 2)
}

/// The product of two half-integers as a scalar.
fn half_product(ctx: &QContext, a: HalfInt, b: HalfInt) -> Scalar {
    ctx.rat(a.twice * b.twice, 4)
}

/// Numeric record of one convergence run: distances to the limit object
/// measured along a ladder of parameter values, with the least-squares slope
/// of log gap against log value. A slope near 1 means first-order
/// convergence in the parameter.
#[derive(Clone, Debug)]
pub struct LimitReport {
    /// What the ladder varies, e.g. "1/t3" or "epsilon".
    pub parameter: String,
    /// Ladder values, positive, ordered coarse to fine.
    pub values: Vec<f64>,
    /// Distance to the limit object at each ladder value.
    pub gaps: Vec<f64>,
    /// Fitted order of convergence; infinite when every gap is exactly zero.
    pub fitted_order: f64,
}

impl LimitReport {
    fn assemble(parameter: &str, values: Vec<f64>, gaps: Vec<f64>) -> LimitReport {
        let fitted_order = fit_order(&values, &gaps);
        LimitReport {
            parameter: String::from(parameter),
            values,
            gaps,
            fitted_order,
        }
    }

    /// True when the gaps never grow along the ladder.
    pub fn gaps_nonincreasing(&self) -> bool {
        self.gaps.windows(2).all(|w| w[1] <= w[0])
    }

    /// Four-column table (parameter name, ladder value, gap, fitted order)
    /// with the fitted order repeated on every row, ready for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("parameter,value,gap,fitted_order\n");
        for (v, g) in self.values.iter().zip(&self.gaps) {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.parameter, v, g, self.fitted_order
            ));
        }
        out
    }
}

/// Least-squares slope of log gap against log value over the points where
/// both are positive. Returns infinity when every gap is exactly zero (the
/// limit is attained identically) and 0 when too few points remain.
fn fit_order(values: &[f64], gaps: &[f64]) -> f64 {
    // f64::ln is a std inherent method; under no_std the trait supplies it,
    // so the import is only "unused" with std on.
    #[allow(unused_imports)]
    use num_traits::Float;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (v, g) in values.iter().zip(gaps) {
        if *v > 0.0 && *g > 0.0 {
            xs.push(v.ln());
            ys.push(g.ln());
        }
    }
    if xs.len() < 2 {
        return if gaps.iter().all(|g| *g == 0.0) {
            f64::INFINITY
        } else {
            0.0
        };
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// A finite location or the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum OdeLocation {
    Finite(Scalar),
    Infinity,
}

/// One row of a Riemann scheme: a singular location with its two local
/// exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeRow {
    pub location: OdeLocation,
    pub exponents: [HalfInt; 2],
}

/// A second-order Fuchsian differential equation
/// p₂(x)·y″ + p₁(x)·y′ + p₀(x)·y = 0 together with its Riemann scheme.
#[derive(Clone, Debug)]
pub struct OdeSpec {
    pub p2_coeff: Poly,
    pub p1_coeff: Poly,
    pub p0_coeff: Poly,
    pub scheme: Vec<SchemeRow>,
}

impl OdeSpec {
    /// The differential operator applied to a polynomial.
    pub fn apply(&self, g: &Poly) -> Poly {
        let d1 = g.derivative();
        let d2 = d1.derivative();
        self.p2_coeff
            .mul(&d2)
            .add(&self.p1_coeff.mul(&d1))
            .add(&self.p0_coeff.mul(g))
    }

    /// Sum of all scheme exponents.
    pub fn fuchs_sum(&self) -> HalfInt {
        self.scheme
            .iter()
            .map(|row| row.exponents[0] + row.exponents[1])
            .sum()
    }

    /// The exponent sum forced by the Fuchs relation for a second-order
    /// equation: the number of singular points minus two.
    pub fn fuchs_target(&self) -> HalfInt {
        HalfInt::from_int(self.scheme.len() as i64 - 2)
    }

    /// The indicial polynomial at a singular location, evaluated at a
    /// candidate exponent; zero exactly when the candidate is a local
    /// characteristic exponent there. Supports simple and double zeros of
    /// the leading coefficient and the point at infinity.
    pub fn indicial_value(
        &self,
        ctx: &QContext,
        location: &OdeLocation,
        rho: HalfInt,
    ) -> Result<Scalar> {
        match location {
            OdeLocation::Finite(a) => {
                if !self.p2_coeff.eval(a).is_zero() {
                    return Err(Error::InvalidParameter(String::from(
                        "the location is not a zero of the leading coefficient",
                    )));
                }
                let descended = rho - 1;
                let d1 = self.p2_coeff.derivative();
                let d1v = d1.eval(a);
                if !d1v.is_zero() {
                    let p_res = self.p1_coeff.eval(a) / &d1v;
                    Ok(half_product(ctx, rho, descended) + half_scalar(ctx, rho) * p_res)
                } else {
                    let u_val = d1.derivative().eval(a) / ctx.int(2);
                    if u_val.is_zero() {
                        return Err(Error::MalformedEquation(String::from(
                            "leading-coefficient zero of order above two",
                        )));
                    }
                    if !self.p1_coeff.eval(a).is_zero() {
                        return Err(Error::MalformedEquation(String::from(
                            "irregular point: the first-order coefficient does not vanish at a double zero of the leading one",
                        )));
                    }
                    let p_res = self.p1_coeff.derivative().eval(a) / &u_val;
                    let q_res = self.p0_coeff.eval(a) / &u_val;
                    Ok(half_product(ctx, rho, descended)
                        + half_scalar(ctx, rho) * p_res
                        + q_res)
                }
            }
            OdeLocation::Infinity => {
                let d2 = self
                    .p2_coeff
                    .degree()
                    .ok_or_else(|| Error::MalformedEquation(String::from("zero leading coefficient")))?;
                if d2 < 2 {
                    return Err(Error::MalformedEquation(String::from(
                        "leading coefficient of degree below two",
                    )));
                }
                let fuchsian_first = self.p1_coeff.degree().map_or(true, |d| d < d2);
                let fuchsian_zeroth = self.p0_coeff.degree().map_or(true, |d| d + 2 <= d2);
                if !fuchsian_first || !fuchsian_zeroth {
                    return Err(Error::MalformedEquation(String::from(
                        "lower-order coefficient degrees too large for a regular point at infinity",
                    )));
                }
                let lead = self.p2_coeff.coeff_or_zero(d2, ctx);
                let b = self.p1_coeff.coeff_or_zero(d2 - 1, ctx);
                let c = self.p0_coeff.coeff_or_zero(d2 - 2, ctx);
                Ok(half_product(ctx, rho, rho + 1) - half_scalar(ctx, rho) * b / &lead
                    + c / &lead)
            }
        }
    }
}

/// Parameter image of the cubic variant when its third location is sent to
/// infinity: the first two sites survive unchanged and the pair of infinity
/// exponents becomes (α, α − h₃ + l₃).
pub fn degenerate_deg3_to_deg2(ctx: &QContext, p3: &Params3) -> Result<Params2> {
    Params2::new(
        ctx,
        p3.h[0],
        p3.h[1],
        p3.l[0],
        p3.l[1],
        p3.alpha,
        p3.alpha - p3.h[2] + p3.l[2],
        p3.t[0].clone(),
        p3.t[1].clone(),
    )
}

fn with_t3(p3: &Params3, t3: Scalar) -> Params3 {
    Params3 {
        h: p3.h,
        l: p3.l,
        alpha: p3.alpha,
        t: [p3.t[0].clone(), p3.t[1].clone(), t3],
    }
}

/// The operator limit of the cubic variant at large third location,
/// extracted exactly: after dividing the equation by −q^{h₃+1/2}·t₃, every
/// coefficient polynomial is an affine function of 1/t₃, so two sample
/// values of t₃ determine the constant part and a third certifies
/// affineness. The result equals the quadratic variant at the parameters of
/// [`degenerate_deg3_to_deg2`].
pub fn deg3_limit_equation(ctx: &QContext, p3: &Params3) -> Result<QDifferenceEquation> {
    let mut scaled: Vec<[Poly; 3]> = Vec::with_capacity(3);
    let mut recips: Vec<Scalar> = Vec::with_capacity(3);
    for k in 1..=3i64 {
        let tau = &p3.t[2] * &ctx.int(k);
        let eq = make_variant_deg3(ctx, &with_t3(p3, tau.clone()))?;
        let inv = (-(ctx.qpow(p3.h[2] + HalfInt::HALF) * &tau)).recip();
        scaled.push([
            eq.u().scale(&inv),
            eq.v().scale(&inv),
            eq.w().scale(&inv),
        ]);
        recips.push(tau.recip());
    }
    let mut limits: Vec<Poly> = Vec::with_capacity(3);
    for j in 0..3 {
        let slope = scaled[0][j]
            .sub(&scaled[1][j])
            .scale(&(&recips[0] - &recips[1]).recip());
        let constant = scaled[0][j].sub(&slope.scale(&recips[0]));
        let check = constant.add(&slope.scale(&recips[2])).sub(&scaled[2][j]);
        let affine = if ctx.is_exact() {
            check.is_zero()
        } else {
            check.coeffs().iter().all(|c| c.magnitude() <= 1e-8)
        };
        if !affine {
            return Err(Error::MalformedEquation(String::from(
                "scaled cubic coefficients are not affine in the reciprocal third location",
            )));
        }
        limits.push(constant);
    }
    let w = limits.pop().expect("three coefficients");
    let v = limits.pop().expect("three coefficients");
    let u = limits.pop().expect("three coefficients");
    QDifferenceEquation::new(ctx.clone(), u, v, w)
}

/// Ladder diagnostic for the operator limit: maximal coefficient distance
/// between the scaled cubic equation at t₃·10^k, k = 2, …, 6, and its
/// quadratic limit. The gap decays at first order in 1/t₃.
pub fn degeneration_report_deg3(ctx: &QContext, p3: &Params3) -> Result<LimitReport> {
    let p2 = degenerate_deg3_to_deg2(ctx, p3)?;
    let target = make_variant_deg2(ctx, &p2)?;
    let mut values = Vec::new();
    let mut gaps = Vec::new();
    for k in 2..=6u32 {
        let tau = &p3.t[2] * &ctx.int(10i64.pow(k));
        let eq = make_variant_deg3(ctx, &with_t3(p3, tau.clone()))?;
        let inv = (-(ctx.qpow(p3.h[2] + HalfInt::HALF) * &tau)).recip();
        let mut gap = 0.0f64;
        for (got, want) in [
            (eq.u(), target.u()),
            (eq.v(), target.v()),
            (eq.w(), target.w()),
        ] {
            let diff = got.scale(&inv).sub(want);
            for c in diff.coeffs() {
                gap = gap.max(c.magnitude());
            }
        }
        values.push(1.0 / tau.magnitude());
        gaps.push(gap);
    }
    Ok(LimitReport::assemble("1/t3", values, gaps))
}

/// A large-t₃ limit of a cubic-variant solution family: either a
/// Pochhammer-basis series whose node stays finite, or a plain inverse-power
/// series at infinity when the node escapes and the basis collapses.
#[derive(Clone, Debug)]
pub enum Conj3Limit {
    Node(PochhammerSeries),
    Power(PowerSeriesSolution),
}

/// Moves the third site out of the first secondary slot; the assembled
/// coefficients are symmetric in the two secondary sites, so this does not
/// change the series.
fn normalize_secondary(perm: [usize; 3]) -> [usize; 3] {
    if perm[1] == 3 {
        [perm[0], perm[2], perm[1]]
    } else {
        perm
    }
}

/// Shared inner kernel of both families: index a runs over the site in the
/// first secondary slot, index b over the second, and the denominator
/// Pochhammer lives at the node site.
struct Conj3Kernel {
    kern_a: Vec<Scalar>,
    kern_b: Vec<Scalar>,
    kern_den: Vec<Scalar>,
    fac: Vec<Scalar>,
    tri: Vec<Scalar>,
}

impl Conj3Kernel {
    fn build(ctx: &QContext, p3: &Params3, perm: [usize; 3], n_max: usize) -> Result<Conj3Kernel> {
        let (h_i, l_i, _) = p3.site(perm[0]);
        let (h_a, l_a, _) = p3.site(perm[1]);
        let (h_b, l_b, _) = p3.site(perm[2]);
        let nu = p3.nu();
        Ok(Conj3Kernel {
            kern_a: poch_prefix(ctx, &ctx.qpow(nu - h_a + l_a), n_max),
            kern_b: poch_prefix(ctx, &ctx.qpow(nu - h_b + l_b), n_max),
            kern_den: poch_prefix_nonzero(
                ctx,
                &ctx.qpow(h_i - l_i + 1),
                n_max,
                "(q^(h_i-l_i+1);q)_(k'+k'')",
            )?,
            fac: q_factorial_prefix(ctx, n_max)?,
            tri: (0..=n_max).map(|s| ctx.qpow_triangular(s as i64)).collect(),
        })
    }

    fn value(&self, n: usize, ka: usize, kb: usize) -> Scalar {
        let s = ka + kb;
        &self.tri[s] * &self.kern_a[ka] * &self.kern_b[kb]
            / (&self.fac[n - s] * &self.fac[ka] * &self.fac[kb] * &self.kern_den[s])
    }
}

/// One family coefficient as an explicit rational function of the third
/// location: cₙ(t₃) = prefactor · numerator(t₃) / denominator(t₃). For the
/// collapsing permutation the prefactor omits the basis scaling.
struct CoeffFraction {
    prefactor: Scalar,
    numerator: Poly,
    denominator: Poly,
}

/// The family coefficients of the cubic variant, reorganized as rational
/// functions of t₃ with polynomial numerator and denominator. The
/// permutation must either keep the third site in a secondary slot or, for
/// the descending family only, place it at the node.
fn conj3_fractions(
    ctx: &QContext,
    p3: &Params3,
    family: ConjFamily,
    perm: [usize; 3],
    n_max: usize,
) -> Result<Vec<CoeffFraction>> {
    check_perm(perm)?;
    let perm = normalize_secondary(perm);
    let nu = p3.nu();
    let poch_nu = poch_prefix(ctx, &ctx.qpow(nu), n_max);
    let qn = power_prefix(ctx, ctx.q(), n_max);
    let kernel = Conj3Kernel::build(ctx, p3, perm, n_max)?;
    let mut out = Vec::with_capacity(n_max + 1);

    if perm[0] == 3 {
        if family == ConjFamily::I {
            return Err(Error::InvalidParameter(String::from(
                "the ascending-family node at the third site grows with t3, so no limit series exists there",
            )));
        }
        // Both geometric weights and both outer denominators carry t₃; the
        // numerator has degree n in t₃ and the denominator degree 2n.
        let (h3, _, _) = p3.site(3);
        let (_, l_a, t_a) = p3.site(perm[1]);
        let (_, l_b, t_b) = p3.site(perm[2]);
        let wa = power_prefix(ctx, &-&(ctx.qpow(h3 - l_a) / t_a), n_max);
        let wb = power_prefix(ctx, &-&(ctx.qpow(h3 - l_b) / t_b), n_max);
        let ba = ctx.qpow(h3 - l_a + 1) / t_a;
        let bb = ctx.qpow(h3 - l_b + 1) / t_b;
        let mut den_poly = Poly::constant(ctx.one());
        for n in 0..=n_max {
            let mut ncoeffs = Vec::with_capacity(n + 1);
            for s in 0..=n {
                let mut acc = ctx.zero();
                for ka in 0..=s {
                    acc = acc + kernel.value(n, ka, s - ka) * &wa[ka] * &wb[s - ka];
                }
                ncoeffs.push(acc);
            }
            out.push(CoeffFraction {
                prefactor: &qn[n] * &poch_nu[n],
                numerator: Poly::from_coeffs(ncoeffs),
                denominator: den_poly.clone(),
            });
            let qj = ctx.qpow_int(n as i64);
            den_poly = den_poly
                .mul(&Poly::from_coeffs(vec![ctx.one(), -(&qj * &ba)]))
                .mul(&Poly::from_coeffs(vec![ctx.one(), -(&qj * &bb)]));
        }
        return Ok(out);
    }

    let (h_i, l_i, t_i) = p3.site(perm[0]);
    let (h_a, l_a, t_a) = p3.site(perm[1]);
    let (h3, l3, _) = p3.site(3);
    match family {
        ConjFamily::I => {
            // Only the second secondary slot carries t₃: one outer
            // denominator and one geometric weight. Numerator and
            // denominator both have degree n.
            let den_a = poch_prefix_nonzero(
                ctx,
                &(ctx.qpow(h_a - l_i + 1) * &(t_a / t_i)),
                n_max,
                "(q^(h_i'-l_i+1)t_i'/t_i;q)_n",
            )?;
            let za = power_prefix(ctx, &-&(ctx.qpow(h_a - l_i) * &(t_a / t_i)), n_max);
            let w3 = power_prefix(ctx, &-&(ctx.qpow(h3 - l_i) / t_i), n_max);
            let b3 = ctx.qpow(h3 - l_i + 1) / t_i;
            let mut den_poly = Poly::constant(ctx.one());
            for n in 0..=n_max {
                let mut ncoeffs = Vec::with_capacity(n + 1);
                for k3 in 0..=n {
                    let mut acc = ctx.zero();
                    for ka in 0..=(n - k3) {
                        acc = acc + kernel.value(n, ka, k3) * &za[ka];
                    }
                    ncoeffs.push(acc * &w3[k3]);
                }
                out.push(CoeffFraction {
                    prefactor: &qn[n] * &poch_nu[n] / &den_a[n],
                    numerator: Poly::from_coeffs(ncoeffs),
                    denominator: den_poly.clone(),
                });
                den_poly = den_poly.mul(&Poly::from_coeffs(vec![
                    ctx.one(),
                    -(&ctx.qpow_int(n as i64) * &b3),
                ]));
            }
        }
        ConjFamily::II => {
            // t₃ appears in reciprocal position; clearing t₃ⁿ makes the
            // denominator monic of degree n, with the numerator coefficient
            // of t₃^{n−k₃} carrying the order-k₃ weight.
            let den_a = poch_prefix_nonzero(
                ctx,
                &(ctx.qpow(h_i - l_a + 1) * &(t_i / t_a)),
                n_max,
                "(q^(h_i-l_i'+1)t_i/t_i';q)_n",
            )?;
            let za = power_prefix(ctx, &-&(ctx.qpow(h_i - l_a) * &(t_i / t_a)), n_max);
            let w3 = power_prefix(ctx, &-&(ctx.qpow(h_i - l3) * t_i), n_max);
            let mut den_poly = Poly::constant(ctx.one());
            for n in 0..=n_max {
                let mut ncoeffs = vec![ctx.zero(); n + 1];
                for k3 in 0..=n {
                    let mut acc = ctx.zero();
                    for ka in 0..=(n - k3) {
                        acc = acc + kernel.value(n, ka, k3) * &za[ka];
                    }
                    ncoeffs[n - k3] = acc * &w3[k3];
                }
                out.push(CoeffFraction {
                    prefactor: &qn[n] * &poch_nu[n] / &den_a[n],
                    numerator: Poly::from_coeffs(ncoeffs),
                    denominator: den_poly.clone(),
                });
                let root = ctx.qpow(h_i - l3 + 1) * &ctx.qpow_int(n as i64) * t_i;
                den_poly = den_poly.mul(&Poly::linear_from_root(&root));
            }
        }
    }
    Ok(out)
}

/// The exact large-t₃ limit of a cubic-variant solution family, extracted
/// from the leading coefficients of the rational-function form of each
/// order. For permutations keeping the third site secondary the node and
/// prefactor survive unchanged; for the descending family anchored at the
/// third site the basis collapses onto inverse powers of x and the limit is
/// a power series at infinity with exponent α.
pub fn conj3_limit_series(
    ctx: &QContext,
    p3: &Params3,
    family: ConjFamily,
    perm: [usize; 3],
    n_max: usize,
) -> Result<Conj3Limit> {
    check_perm(perm)?;
    let perm = normalize_secondary(perm);
    let fractions = conj3_fractions(ctx, p3, family, perm, n_max)?;
    if perm[0] == 3 {
        let (h3, _, _) = p3.site(3);
        let mut coeffs = Vec::with_capacity(n_max + 1);
        for (n, fr) in fractions.iter().enumerate() {
            let num = fr.numerator.coeff_or_zero(n, ctx);
            let den = fr.denominator.coeff_or_zero(2 * n, ctx);
            let scale = ctx.qpow((h3 + HalfInt::HALF) * (n as i64))
                * &ctx.qpow_int(((n * n - n) / 2) as i64);
            let sign = if n % 2 == 0 { ctx.one() } else { -ctx.one() };
            coeffs.push(sign * scale * &fr.prefactor * num / den);
        }
        return Ok(Conj3Limit::Power(PowerSeriesSolution {
            anchor: Anchor::Infinity,
            root: ctx.qpow(p3.alpha),
            exponent: Some(p3.alpha),
            coeffs,
        }));
    }
    let (h_i, l_i, t_i) = p3.site(perm[0]);
    let nu = p3.nu();
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for (n, fr) in fractions.iter().enumerate() {
        let num = fr.numerator.coeff_or_zero(n, ctx);
        let den = fr.denominator.coeff_or_zero(n, ctx);
        coeffs.push(&fr.prefactor * num / den);
    }
    let series = match family {
        ConjFamily::I => PochhammerSeries {
            prefactor_exponent: nu - p3.alpha,
            node: ctx.qpow(l_i - HalfInt::HALF) * t_i,
            orientation: Orientation::Ascending,
            coeffs,
        },
        ConjFamily::II => PochhammerSeries {
            prefactor_exponent: -p3.alpha,
            node: ctx.qpow(h_i + HalfInt::HALF) * t_i,
            orientation: Orientation::Descending,
            coeffs,
        },
    };
    Ok(Conj3Limit::Node(series))
}

/// Ladder diagnostic for the family-coefficient limits: distance between
/// the assembled coefficients at t₃·10^k over the given range of decades k
/// and their limit values; first-order decay in 1/t₃. For the collapsing
/// permutation the assembled coefficients are rescaled by the leading
/// behavior of the escaping basis before comparison, which inflates the
/// subleading terms, so that case needs deeper decades to reach the
/// asymptotic regime.
pub fn limit_conj_coeffs(
    ctx: &QContext,
    p3: &Params3,
    family: ConjFamily,
    perm: [usize; 3],
    n_max: usize,
    decades: core::ops::RangeInclusive<u32>,
) -> Result<LimitReport> {
    check_perm(perm)?;
    if decades.is_empty() || *decades.end() > 15 {
        return Err(Error::InvalidParameter(
            "the decade range must be nonempty and stop at 10^15".into(),
        ));
    }
    let target = conj3_limit_series(ctx, p3, family, perm, n_max)?;
    let (h3, _, _) = p3.site(3);
    let mut values = Vec::new();
    let mut gaps = Vec::new();
    for k in decades {
        let tau = &p3.t[2] * &ctx.int(10i64.pow(k));
        let p3k = with_t3(p3, tau.clone());
        let series = conj3_series(ctx, &p3k, family, perm, n_max)?;
        let mut gap = 0.0f64;
        match &target {
            Conj3Limit::Node(t) => {
                for n in 0..=n_max {
                    gap = gap.max((&series.coeffs[n] - &t.coeffs[n]).magnitude());
                }
            }
            Conj3Limit::Power(t) => {
                for n in 0..=n_max {
                    let basis_scale = (-&tau).powi(n as i64)
                        * &(ctx.qpow((h3 + HalfInt::HALF) * (n as i64))
                            * &ctx.qpow_int(((n * n - n) / 2) as i64));
                    gap = gap
                        .max((&series.coeffs[n] * basis_scale - &t.coeffs[n]).magnitude());
                }
            }
        }
        values.push(1.0 / tau.magnitude());
        gaps.push(gap);
    }
    Ok(LimitReport::assemble("1/t3", values, gaps))
}

/// The quadratic variant at vanishing second location. All three
/// coefficients of the variant acquire a factor x there; what remains after
/// dividing it out is a degree-one three-term equation. On the stratum
/// t₁ = 1, h₁ = 1/2, h₂ − l₂ = α₁ + α₂ + l₁ − 3/2 that equation is
/// literally the classical q-hypergeometric operator with bases
/// (q^{α₁}, q^{α₂}, q^{α₁+α₂+l₁−1/2}).
#[derive(Clone, Debug)]
pub struct QhypDegeneration {
    pub equation: QDifferenceEquation,
    /// The classical bases (a, b, c) when the stratum is met.
    pub hyper_bases: Option<(Scalar, Scalar, Scalar)>,
    /// Why the base identification was skipped, when it was.
    pub note: Option<String>,
}

/// Sends the second location of the quadratic variant to zero and divides
/// the common factor x out of the equation. See [`QhypDegeneration`].
pub fn degenerate_deg2_to_qhyp(ctx: &QContext, p2: &Params2) -> Result<QhypDegeneration> {
    let (u, v, w) = variant_deg2_polys_unchecked(
        ctx,
        p2.h1,
        p2.h2,
        p2.l1,
        p2.l2,
        p2.alpha1,
        p2.alpha2,
        &p2.t1,
        &ctx.zero(),
    );
    let equation = QDifferenceEquation::new(ctx.clone(), u.div_x()?, v.div_x()?, w.div_x()?)?;
    let on_stratum = p2.t1 == ctx.one()
        && p2.h1 == HalfInt::HALF
        && p2.h2 - p2.l2 == p2.alpha1 + p2.alpha2 + p2.l1 - HalfInt::new(3);
    if on_stratum {
        let bases = (
            ctx.qpow(p2.alpha1),
            ctx.qpow(p2.alpha2),
            ctx.qpow(p2.alpha1 + p2.alpha2 + p2.l1 - HalfInt::HALF),
        );
        Ok(QhypDegeneration {
            equation,
            hyper_bases: Some(bases),
            note: None,
        })
    } else {
        Ok(QhypDegeneration {
            equation,
            hyper_bases: None,
            note: Some(String::from(
                "base identification skipped: parameters are off the stratum t1 = 1, h1 = 1/2, h2 - l2 = alpha1 + alpha2 + l1 - 3/2",
            )),
        })
    }
}

/// The zero-t₂ limit of the inverse-power family at infinity: in each
/// order-n coefficient only the top convolution term survives, leaving
///
/// ```text
/// c_n = (q^{lambda+alpha1};q)_n (q^{lambda+alpha1-h2+l2};q)_n
///       / ((q^{alpha1-alpha2+1};q)_n (q;q)_n) · (q^{l1+1/2} t1)^n.
/// ```
pub fn qhyp_limit_inverse_power_series(
    ctx: &QContext,
    p2: &Params2,
    n_max: usize,
) -> Result<PowerSeriesSolution> {
    let lam = p2.lambda();
    let base = lam + p2.alpha1;
    let num_a = poch_prefix(ctx, &ctx.qpow(base), n_max);
    let num_b = poch_prefix(ctx, &ctx.qpow(base - p2.h2 + p2.l2), n_max);
    let den = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(p2.alpha1 - p2.alpha2 + 1),
        n_max,
        "(q^(alpha1-alpha2+1);q)_n",
    )?;
    let fac = q_factorial_prefix(ctx, n_max)?;
    let zpow = power_prefix(
        ctx,
        &(ctx.qpow(p2.l1 + HalfInt::HALF) * &p2.t1),
        n_max,
    );
    let coeffs = (0..=n_max)
        .map(|n| &num_a[n] * &num_b[n] / (&den[n] * &fac[n]) * &zpow[n])
        .collect();
    Ok(PowerSeriesSolution {
        anchor: Anchor::Infinity,
        root: ctx.qpow(p2.alpha1),
        exponent: Some(p2.alpha1),
        coeffs,
    })
}

/// The zero-t₂ limit of the ascending family at the first site: the node
/// q^{l₁−1/2}t₁ survives and the t₂-dependent outer denominator degenerates
/// to 1, leaving coefficients
///
/// ```text
/// c_n = q^n (q^{lambda+alpha1};q)_n (q^{lambda+alpha2};q)_n
///       / ((q^{h1-l1+1};q)_n (q;q)_n).
/// ```
pub fn qhyp_limit_node_series(
    ctx: &QContext,
    p2: &Params2,
    n_max: usize,
) -> Result<PochhammerSeries> {
    let lam = p2.lambda();
    let num_a = poch_prefix(ctx, &ctx.qpow(lam + p2.alpha1), n_max);
    let num_b = poch_prefix(ctx, &ctx.qpow(lam + p2.alpha2), n_max);
    let den = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(p2.h1 - p2.l1 + 1),
        n_max,
        "(q^(h_1-l_1+1);q)_n",
    )?;
    let fac = q_factorial_prefix(ctx, n_max)?;
    let qn = power_prefix(ctx, ctx.q(), n_max);
    let coeffs = (0..=n_max)
        .map(|n| &qn[n] * &num_a[n] * &num_b[n] / (&den[n] * &fac[n]))
        .collect();
    Ok(PochhammerSeries {
        prefactor_exponent: lam,
        node: ctx.qpow(p2.l1 - HalfInt::HALF) * &p2.t1,
        orientation: Orientation::Ascending,
        coeffs,
    })
}

/// The zero-t₂ limit of the ascending family at the second site, whose node
/// q^{l₂−1/2}t₂ escapes to the origin: the Pochhammer basis collapses onto
/// plain powers and the limit is the power series
///
/// ```text
/// x^lambda · Σ_n (q^{lambda+alpha1};q)_n (q^{lambda+alpha2};q)_n
///   / ((q^{h2-l2+1};q)_n (q;q)_n) · (x / (q^{h1-1/2} t1))^n.
/// ```
pub fn qhyp_limit_origin_series(
    ctx: &QContext,
    p2: &Params2,
    n_max: usize,
) -> Result<PowerSeriesSolution> {
    let lam = p2.lambda();
    let num_a = poch_prefix(ctx, &ctx.qpow(lam + p2.alpha1), n_max);
    let num_b = poch_prefix(ctx, &ctx.qpow(lam + p2.alpha2), n_max);
    let den = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(p2.h2 - p2.l2 + 1),
        n_max,
        "(q^(h_2-l_2+1);q)_n",
    )?;
    let fac = q_factorial_prefix(ctx, n_max)?;
    let node_inv = ctx.qpow(HalfInt::HALF - p2.h1) / &p2.t1;
    let zpow = power_prefix(ctx, &node_inv, n_max);
    let coeffs = (0..=n_max)
        .map(|n| &num_a[n] * &num_b[n] / (&den[n] * &fac[n]) * &zpow[n])
        .collect();
    Ok(PowerSeriesSolution {
        anchor: Anchor::Zero,
        root: ctx.qpow(lam),
        exponent: Some(lam),
        coeffs,
    })
}

/// The zero-t₂ limit of the descending family at the first site: the node
/// q^{h₁+1/2}t₁ survives; outer denominator and inner sum blow up together
/// and cancel to leave coefficients
///
/// ```text
/// c_n = q^n (q^{lambda+alpha1};q)_n (q^{lambda+alpha1-h2+l2};q)_n
///       / ((q^{h1-l1+1};q)_n (q;q)_n).
/// ```
pub fn qhyp_limit_descending_series(
    ctx: &QContext,
    p2: &Params2,
    n_max: usize,
) -> Result<PochhammerSeries> {
    let lam = p2.lambda();
    let base = lam + p2.alpha1;
    let num_a = poch_prefix(ctx, &ctx.qpow(base), n_max);
    let num_b = poch_prefix(ctx, &ctx.qpow(base - p2.h2 + p2.l2), n_max);
    let den = poch_prefix_nonzero(
        ctx,
        &ctx.qpow(p2.h1 - p2.l1 + 1),
        n_max,
        "(q^(h_1-l_1+1);q)_n",
    )?;
    let fac = q_factorial_prefix(ctx, n_max)?;
    let qn = power_prefix(ctx, ctx.q(), n_max);
    let coeffs = (0..=n_max)
        .map(|n| &qn[n] * &num_a[n] * &num_b[n] / (&den[n] * &fac[n]))
        .collect();
    Ok(PochhammerSeries {
        prefactor_exponent: -p2.alpha1,
        node: ctx.qpow(p2.h1 + HalfInt::HALF) * &p2.t1,
        orientation: Orientation::Descending,
        coeffs,
    })
}

/// The q → 1 continuum of the quadratic variant: a Fuchsian equation with
/// regular singular points 0, t₁, t₂, ∞ and scheme
///
/// ```text
/// { 0: (lambda, lambda+1),  t_i: (0, l_i - h_i),  inf: (alpha1, alpha2) }.
/// ```
pub fn continuum_ode_deg2(ctx: &QContext, p2: &Params2) -> Result<OdeSpec> {
    if p2.t1 == p2.t2 {
        return Err(Error::InvalidParameter(String::from(
            "confluent locations: the continuum form needs t1 and t2 distinct",
        )));
    }
    let lam = p2.lambda();
    let r1 = Poly::linear_from_root(&p2.t1);
    let r2 = Poly::linear_from_root(&p2.t2);
    let rr = r1.mul(&r2);
    let p2_coeff = rr.mul_x().mul_x();
    let s_poly = r1
        .mul_x()
        .scale(&half_scalar(ctx, p2.h2 - p2.l2 + 1))
        .add(&r2.mul_x().scale(&half_scalar(ctx, p2.h1 - p2.l1 + 1)))
        .sub(&rr.scale(&ctx.rat(lam.twice, 1)));
    let p1_coeff = s_poly.mul_x();
    let btilde = -(half_product(ctx, lam, lam - p2.h2 + p2.l2) * &p2.t1)
        - half_product(ctx, lam, lam - p2.h1 + p2.l1) * &p2.t2;
    let p0_coeff = Poly::from_coeffs(vec![
        &p2.t1 * &p2.t2 * half_product(ctx, lam, lam + 1),
        btilde,
        half_product(ctx, p2.alpha1, p2.alpha2),
    ]);
    let scheme = vec![
        SchemeRow {
            location: OdeLocation::Finite(ctx.zero()),
            exponents: [lam, lam + 1],
        },
        SchemeRow {
            location: OdeLocation::Finite(p2.t1.clone()),
            exponents: [HalfInt::ZERO, p2.l1 - p2.h1],
        },
        SchemeRow {
            location: OdeLocation::Finite(p2.t2.clone()),
            exponents: [HalfInt::ZERO, p2.l2 - p2.h2],
        },
        SchemeRow {
            location: OdeLocation::Infinity,
            exponents: [p2.alpha1, p2.alpha2],
        },
    ];
    Ok(OdeSpec {
        p2_coeff,
        p1_coeff,
        p0_coeff,
        scheme,
    })
}

/// The q → 1 continuum of the cubic variant: a Fuchsian equation with
/// regular singular points 0, t₁, t₂, t₃, ∞ and scheme
///
/// ```text
/// { 0: (nu-alpha, nu-alpha+1),  t_i: (0, l_i - h_i),  inf: (alpha, alpha+1) }.
/// ```
pub fn continuum_ode_deg3(ctx: &QContext, p3: &Params3) -> Result<OdeSpec> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if p3.t[i] == p3.t[j] {
                return Err(Error::InvalidParameter(String::from(
                    "confluent locations: the continuum form needs pairwise distinct t",
                )));
            }
        }
    }
    let nu = p3.nu();
    let al = p3.alpha;
    let na = nu - al;
    let r: Vec<Poly> = p3.t.iter().map(Poly::linear_from_root).collect();
    let rrr = r[0].mul(&r[1]).mul(&r[2]);
    let p2_coeff = rrr.mul_x().mul_x();
    let mut s_sum = Poly::zero();
    for i in 0..3 {
        s_sum = s_sum.add(
            &r[(i + 1) % 3]
                .mul(&r[(i + 2) % 3])
                .scale(&half_scalar(ctx, p3.h[i] - p3.l[i] + 1)),
        );
    }
    let p1_coeff = s_sum
        .mul_x()
        .mul_x()
        .sub(&rrr.mul_x().scale(&ctx.rat(na.twice, 1)));
    let mut c2 = ctx.zero();
    let mut c1 = ctx.zero();
    for i in 0..3 {
        c2 = c2 - half_product(ctx, al, p3.l[i] - p3.h[i] + al) * &p3.t[i];
        let others = &p3.t[(i + 1) % 3] * &p3.t[(i + 2) % 3];
        c1 = c1 + half_product(ctx, na, na - p3.h[i] + p3.l[i]) * others;
    }
    let c0 = -(&(&p3.t[0] * &p3.t[1]) * &p3.t[2]) * half_product(ctx, na, na + 1);
    let p0_coeff = Poly::from_coeffs(vec![c0, c1, c2, half_product(ctx, al, al + 1)]);
    let mut scheme = vec![SchemeRow {
        location: OdeLocation::Finite(ctx.zero()),
        exponents: [na, na + 1],
    }];
    for i in 0..3 {
        scheme.push(SchemeRow {
            location: OdeLocation::Finite(p3.t[i].clone()),
            exponents: [HalfInt::ZERO, p3.l[i] - p3.h[i]],
        });
    }
    scheme.push(SchemeRow {
        location: OdeLocation::Infinity,
        exponents: [al, al + 1],
    });
    Ok(OdeSpec {
        p2_coeff,
        p1_coeff,
        p0_coeff,
        scheme,
    })
}

/// A substitution z(x) = scale·(x − numerator_root)/(x − pole), affine when
/// the pole is absent.
#[derive(Clone, Debug)]
pub struct MobiusMap {
    pub numerator_root: Scalar,
    pub pole: Option<Scalar>,
    pub scale: Scalar,
}

impl MobiusMap {
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let num = x - &self.numerator_root;
        match &self.pole {
            None => Ok(&self.scale * &num),
            Some(b) => {
                let den = x - b;
                if den.is_zero() {
                    return Err(Error::ZeroArgument(
                        "substitution argument offset from the pole".into(),
                    ));
                }
                Ok(&self.scale * &num / den)
            }
        }
    }

    pub fn first_derivative(&self, x: &Scalar) -> Result<Scalar> {
        match &self.pole {
            None => Ok(self.scale.clone()),
            Some(b) => {
                let den = x - b;
                if den.is_zero() {
                    return Err(Error::ZeroArgument(
                        "substitution argument offset from the pole".into(),
                    ));
                }
                let shift = &self.numerator_root - b;
                Ok(&self.scale * &shift / &(&den * &den))
            }
        }
    }

    pub fn second_derivative(&self, x: &Scalar) -> Result<Scalar> {
        match &self.pole {
            None => Ok(self.scale.zero_like()),
            Some(b) => {
                let den = x - b;
                if den.is_zero() {
                    return Err(Error::ZeroArgument(
                        "substitution argument offset from the pole".into(),
                    ));
                }
                let shift = &self.numerator_root - b;
                let cube = &(&den * &den) * &den;
                let doubled = &(&self.scale * &shift) + &(&self.scale * &shift);
                Ok(-(doubled / &cube))
            }
        }
    }
}

/// Reduction of a continuum equation to hypergeometric normal form
///
/// ```text
/// z(1−z)·y″ + (gamma − (a+b+1)·z)·y′ − ab·y = 0
/// ```
///
/// through the gauge g(x) = x^{power_exponent}·(x − point)^{e}·y(z(x)), the
/// peeled factor being present only in the cubic case.
#[derive(Clone, Debug)]
pub struct GaussReduction {
    pub power_exponent: HalfInt,
    pub peeled_factor: Option<(Scalar, HalfInt)>,
    pub z_map: MobiusMap,
    pub gamma: HalfInt,
    pub a_plus_b: HalfInt,
    pub ab: Scalar,
}

/// Normal-form data for the quadratic continuum: gauge x^lambda, affine
/// substitution z = (x − t₁)/(t₂ − t₁), local datum gamma = h₁ − l₁ + 1,
/// exponent sum a+b = 1 + h₁ + h₂ − l₁ − l₂, product ab = (λ+α₁)(λ+α₂).
pub fn gauss_reduction_deg2(ctx: &QContext, p2: &Params2) -> Result<GaussReduction> {
    if p2.t1 == p2.t2 {
        return Err(Error::InvalidParameter(String::from(
            "confluent locations: the normal form needs t1 and t2 distinct",
        )));
    }
    let lam = p2.lambda();
    Ok(GaussReduction {
        power_exponent: lam,
        peeled_factor: None,
        z_map: MobiusMap {
            numerator_root: p2.t1.clone(),
            pole: None,
            scale: (&p2.t2 - &p2.t1).recip(),
        },
        gamma: p2.h1 - p2.l1 + 1,
        a_plus_b: p2.h1 + p2.h2 - p2.l1 - p2.l2 + 1,
        ab: half_product(ctx, lam + p2.alpha1, lam + p2.alpha2),
    })
}

/// Normal-form data for the cubic continuum: gauge x^{ν−α}(x−t₂)^{−ν},
/// substitution z = (x−t₁)(t₃−t₂)/((x−t₂)(t₃−t₁)), local datum
/// gamma = h₁ − l₁ + 1, exponent sum a+b = 1 + h₁ + h₃ − l₁ − l₃, product
/// ab = ν(ν − h₂ + l₂).
pub fn gauss_reduction_deg3(ctx: &QContext, p3: &Params3) -> Result<GaussReduction> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if p3.t[i] == p3.t[j] {
                return Err(Error::InvalidParameter(String::from(
                    "confluent locations: the normal form needs pairwise distinct t",
                )));
            }
        }
    }
    let nu = p3.nu();
    Ok(GaussReduction {
        power_exponent: nu - p3.alpha,
        peeled_factor: Some((p3.t[1].clone(), -nu)),
        z_map: MobiusMap {
            numerator_root: p3.t[0].clone(),
            pole: Some(p3.t[1].clone()),
            scale: (&p3.t[2] - &p3.t[1]) / &(&p3.t[2] - &p3.t[0]),
        },
        gamma: p3.h[0] - p3.l[0] + 1,
        a_plus_b: p3.h[0] + p3.h[2] - p3.l[0] - p3.l[2] + 1,
        ab: half_product(ctx, nu, nu - p3.h[1] + p3.l[1]),
    })
}

/// The normal-form operator of a reduction applied to a polynomial in z.
pub fn gauss_normal_apply(ctx: &QContext, red: &GaussReduction, yhat: &Poly) -> Poly {
    let d1 = yhat.derivative();
    let d2 = d1.derivative();
    let quad = Poly::from_coeffs(vec![ctx.zero(), ctx.one(), -ctx.one()]);
    let lin = Poly::from_coeffs(vec![
        half_scalar(ctx, red.gamma),
        -half_scalar(ctx, red.a_plus_b + 1),
    ]);
    quad.mul(&d2).add(&lin.mul(&d1)).sub(&yhat.scale(&red.ab))
}

/// Exact pointwise witness that the recorded gauge and substitution carry
/// the continuum equation to its normal form. With φ the gauge prefactor,
/// Tᵢ = Ode[φ·(yᵢ∘z)]/φ evaluated at x must be proportional to
/// Gᵢ = Normal[yᵢ](z(x)) with a ratio independent of the test function, so
/// the cross-difference T₁G₂ − T₂G₁ vanishes identically in x. Only the
/// logarithmic derivative of φ enters, which is rational, so the witness is
/// exact in exact mode.
pub fn gauss_conjugation_witness(
    ctx: &QContext,
    ode: &OdeSpec,
    red: &GaussReduction,
    y1: &Poly,
    y2: &Poly,
    x: &Scalar,
) -> Result<Scalar> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("witness point".into()));
    }
    let mut log_d = half_scalar(ctx, red.power_exponent) / x;
    let mut log_d2 = -(half_scalar(ctx, red.power_exponent) / &(x * x));
    if let Some((point, e)) = &red.peeled_factor {
        let off = x - point;
        if off.is_zero() {
            return Err(Error::ZeroArgument(
                "witness point offset from the peeled factor".into(),
            ));
        }
        log_d = log_d + half_scalar(ctx, *e) / &off;
        log_d2 = log_d2 - half_scalar(ctx, *e) / &(&off * &off);
    }
    let zv = red.z_map.eval(x)?;
    let z1 = red.z_map.first_derivative(x)?;
    let z2 = red.z_map.second_derivative(x)?;
    let p2v = ode.p2_coeff.eval(x);
    let p1v = ode.p1_coeff.eval(x);
    let p0v = ode.p0_coeff.eval(x);
    let conjugated = |y: &Poly| -> Scalar {
        let yd = y.derivative();
        let vy = y.eval(&zv);
        let vy1 = yd.eval(&zv);
        let vy2 = yd.derivative().eval(&zv);
        let g1 = &log_d * &vy + &z1 * &vy1;
        let g2 = (&log_d * &log_d + &log_d2) * &vy
            + (ctx.int(2) * &log_d * &z1 + &z2) * &vy1
            + &(&z1 * &z1) * &vy2;
        &p2v * &g2 + &p1v * &g1 + &p0v * &vy
    };
    let normal = |y: &Poly| gauss_normal_apply(ctx, red, y).eval(&zv);
    Ok(conjugated(y1) * normal(y2) - conjugated(y2) * normal(y1))
}

/// Empirical check of the continuum statement: at q = 1 + ε the three-term
/// operator applied to a polynomial test function, divided by ε², approaches
/// the differential operator pointwise, with a first-order gap in ε. The
/// `build` closure assembles the q-equation in the per-ε context; `ctx` is
/// the context the differential equation's coefficients live in and must be
/// a float context.
pub fn continuum_residual_scaling<F>(
    ctx: &QContext,
    ode: &OdeSpec,
    build: F,
    testfn: &[f64],
    epsilons: &[f64],
    samples: &[f64],
) -> Result<LimitReport>
where
    F: Fn(&QContext) -> Result<QDifferenceEquation>,
{
    // f64::sqrt is a std inherent method; under no_std the trait supplies
    // it, so the import is only "unused" with std on.
    #[allow(unused_imports)]
    use num_traits::Float;
    if ctx.is_exact() {
        return Err(Error::FloatModeRequired(
            "continuum residual scaling".into(),
        ));
    }
    if testfn.is_empty() || testfn.len() > 9 {
        return Err(Error::InvalidParameter(String::from(
            "the test polynomial must be nonzero of degree at most 8",
        )));
    }
    if epsilons.is_empty() || epsilons.iter().any(|e| !(*e > 0.0 && *e <= 0.1)) {
        return Err(Error::InvalidParameter(String::from(
            "the epsilon ladder must be nonempty inside (0, 0.1]",
        )));
    }
    if samples.is_empty() {
        return Err(Error::InvalidParameter(String::from(
            "the sample grid must be nonempty",
        )));
    }
    let as_poly = || {
        Poly::from_coeffs(
            testfn
                .iter()
                .map(|c| Scalar::float_re(*c))
                .collect::<Vec<_>>(),
        )
    };
    let ode_applied = ode.apply(&as_poly());
    let mut values = Vec::new();
    let mut gaps = Vec::new();
    for &eps in epsilons {
        let ctx_eps = QContext::float_re((1.0 + eps).sqrt())?;
        let eq = build(&ctx_eps)?;
        let applied = eq.apply_to_poly(&as_poly());
        let mut gap = 0.0f64;
        for &xs in samples {
            let x = Scalar::float_re(xs);
            let lhs = applied.eval(&x) / Scalar::float_re(eps * eps);
            let rhs = ode_applied.eval(&x);
            gap = gap.max((lhs - rhs).magnitude());
        }
        values.push(eps);
        gaps.push(gap);
    }
    Ok(LimitReport::assemble("epsilon", values, gaps))
}
