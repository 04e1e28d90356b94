//! The three-term q-difference equation and its structural transforms.

use crate::error::{Error, Result};
use crate::qcore::{HalfInt, QContext, Scalar};

use super::Poly;

/// The operator E[g](x) = u(x)·g(x/q) + v(x)·g(x) + w(x)·g(q·x).
///
/// A solution is a function with E[g] ≡ 0. The polynomials u and w must be
/// nonzero; their constant and leading coefficients drive the local analysis
/// at 0 and at ∞.
#[derive(Clone, Debug)]
pub struct QDifferenceEquation {
    ctx: QContext,
    u: Poly,
    v: Poly,
    w: Poly,
}

impl QDifferenceEquation {
    pub fn new(ctx: QContext, u: Poly, v: Poly, w: Poly) -> Result<QDifferenceEquation> {
        if u.is_zero() || w.is_zero() {
            return Err(Error::MalformedEquation(
                "the shifted-term polynomials u and w must be nonzero".into(),
            ));
        }
        for (poly, name) in [(&u, "u"), (&v, "v"), (&w, "w")] {
            for c in poly.coeffs() {
                ctx.check_mode(c, name)?;
            }
        }
        Ok(QDifferenceEquation { ctx, u, v, w })
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    /// Coefficient on g(x/q).
    pub fn u(&self) -> &Poly {
        &self.u
    }

    /// Coefficient on g(x).
    pub fn v(&self) -> &Poly {
        &self.v
    }

    /// Coefficient on g(q·x).
    pub fn w(&self) -> &Poly {
        &self.w
    }

    /// Overall degree: the maximum degree among u, v, w.
    pub fn degree(&self) -> usize {
        let dv = self.v.degree().map_or(0, |d| d);
        self.u
            .degree()
            .unwrap()
            .max(dv)
            .max(self.w.degree().unwrap())
    }

    /// Evaluates E[g] at a nonzero point, for an arbitrary function g.
    pub fn apply<F: Fn(&Scalar) -> Scalar>(&self, g: F, x: &Scalar) -> Result<Scalar> {
        if x.is_zero() {
            return Err(Error::ZeroArgument("operator application point".into()));
        }
        self.ctx.check_mode(x, "application point")?;
        let q = self.ctx.q();
        let down = g(&(x / q));
        let here = g(x);
        let up = g(&(q * x));
        Ok(self.u.eval(x) * down + self.v.eval(x) * here + self.w.eval(x) * up)
    }

    /// E[g] for a polynomial g, exactly, as a polynomial.
    pub fn apply_to_poly(&self, g: &Poly) -> Poly {
        let q = self.ctx.q();
        let down = g.scale_arg(&q.recip());
        let up = g.scale_arg(q);
        self.u
            .mul(&down)
            .add(&self.v.mul(g))
            .add(&self.w.mul(&up))
    }

    /// The equation satisfied by h when g(x) = x^μ·h(x): u gains q^{−μ}, w
    /// gains q^{μ}, v is unchanged.
    pub fn gauge_power(&self, mu: HalfInt) -> QDifferenceEquation {
        self.gauge_by_root(&self.ctx.qpow(mu))
    }

    /// Like [`QDifferenceEquation::gauge_power`] with the multiplier given
    /// as the scalar X = q^μ directly; works even when μ itself is not a
    /// representable half-integer.
    pub fn gauge_by_root(&self, x_root: &Scalar) -> QDifferenceEquation {
        assert!(!x_root.is_zero(), "gauge root must be nonzero");
        QDifferenceEquation {
            ctx: self.ctx.clone(),
            u: self.u.scale(&x_root.recip()),
            v: self.v.clone(),
            w: self.w.scale(x_root),
        }
    }

    /// The equation satisfied by g̃(ξ) = g(1/ξ): coefficient lists are padded
    /// to the overall degree and reversed, with u and w exchanged. Applying
    /// it twice returns the original equation. The local analysis of this
    /// equation at ξ = 0 is the local analysis of the original at x = ∞.
    pub fn reflect(&self) -> QDifferenceEquation {
        let len = self.degree() + 1;
        QDifferenceEquation {
            ctx: self.ctx.clone(),
            u: self.w.reversed(len),
            v: self.v.reversed(len),
            w: self.u.reversed(len),
        }
    }

    /// Rescales all three polynomials by a nonzero scalar (the solution set
    /// is unchanged).
    pub fn scale(&self, c: &Scalar) -> QDifferenceEquation {
        assert!(!c.is_zero(), "scaling an equation by zero");
        QDifferenceEquation {
            ctx: self.ctx.clone(),
            u: self.u.scale(c),
            v: self.v.scale(c),
            w: self.w.scale(c),
        }
    }

    /// Divides through by the leading coefficient of u, making u monic. Two
    /// equations with the same solution set and the same degree normalize to
    /// equal triples.
    pub fn normalized(&self) -> QDifferenceEquation {
        let lead = self.u.leading().expect("u is nonzero").clone();
        self.scale(&lead.recip())
    }

    /// True when the two equations agree up to one overall scalar factor.
    pub fn eq_up_to_scalar(&self, other: &QDifferenceEquation) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.u == b.u && a.v == b.v && a.w == b.w
    }

    /// Like [`QDifferenceEquation::eq_up_to_scalar`] with a float tolerance.
    pub fn approx_eq_up_to_scalar(&self, other: &QDifferenceEquation, tol: f64) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.u.approx_eq(&b.u, tol) && a.v.approx_eq(&b.v, tol) && a.w.approx_eq(&b.w, tol)
    }
}
