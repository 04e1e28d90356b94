//! Dense univariate polynomials over [`Scalar`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::qcore::{QContext, Scalar};

/// Polynomial with ascending coefficients `coeffs[k]` on x^k.
///
/// Trailing zeros are trimmed on construction, so the zero polynomial has an
/// empty coefficient vector and `degree() == None`. Arithmetic infers the
/// mode from the operands; like scalars, mixing exact and float polynomials
/// panics.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    /// The monic linear factor x − r.
    pub fn linear_from_root(r: &Scalar) -> Poly {
        Poly::from_coeffs(vec![-r, r.one_like()])
    }

    /// Constant polynomial.
    pub fn constant(c: Scalar) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.coeffs.get(k)
    }

    /// Coefficient on x^k, mode-correct zero beyond the degree.
    pub fn coeff_or_zero(&self, k: usize, ctx: &QContext) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ctx.zero())
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Horner evaluation. The zero polynomial evaluates to zero in the mode
    /// of `x`.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = match self.coeffs.last() {
            Some(c) => c.clone(),
            None => return x.zero_like(),
        };
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * x + c;
        }
        acc
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out: Vec<Option<Scalar>> =
            vec![None; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = a * b;
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc + term,
                    None => term,
                });
            }
        }
        Poly::from_coeffs(out.into_iter().map(Option::unwrap).collect())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// p(c·x): coefficient on x^k gains a factor c^k.
    pub fn scale_arg(&self, c: &Scalar) -> Poly {
        let mut power = match self.coeffs.first() {
            Some(c0) => c0.one_like(),
            None => return Poly::zero(),
        };
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power = power * c;
        }
        Poly::from_coeffs(out)
    }

    /// x·p(x).
    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(self.coeffs[0].zero_like());
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    /// p(x)/x; fails unless the constant coefficient is zero.
    pub fn div_x(&self) -> Result<Poly> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::MalformedEquation(
                "polynomial is not divisible by x".into(),
            ));
        }
        Ok(Poly::from_coeffs(self.coeffs[1..].to_vec()))
    }

    /// x^{len−1}·p(1/x) for `len` ≥ deg(p)+1: the coefficient list padded to
    /// `len` entries and reversed. Realizes the substitution x ↦ 1/x for an
    /// equation of overall degree `len − 1`.
    pub fn reversed(&self, len: usize) -> Poly {
        assert!(
            len >= self.coeffs.len(),
            "reversal length below polynomial length"
        );
        if self.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; len];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[len - 1 - k] = c.clone();
        }
        Poly::from_coeffs(out)
    }

    /// p(a·x + b) by Horner in the affine argument.
    pub fn compose_affine(&self, a: &Scalar, b: &Scalar) -> Poly {
        let arg = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = match self.coeffs.last() {
            Some(c) => Poly::constant(c.clone()),
            None => return Poly::zero(),
        };
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(&arg).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let k_scalar = match c {
                Scalar::Exact(_) => Scalar::exact_int(k as i64),
                Scalar::Float(_) => Scalar::float_re(k as f64),
            };
            out.push(c * k_scalar);
        }
        Poly::from_coeffs(out)
    }

    /// True when all coefficients agree within `tol` (relative, float mode)
    /// or exactly (exact mode).
    pub fn approx_eq(&self, other: &Poly, tol: f64) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        for k in 0..n {
            let matches = match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.approx_eq(b, tol),
                (Some(a), None) | (None, Some(a)) => {
                    if a.is_exact() {
                        a.is_zero()
                    } else {
                        a.magnitude() <= tol
                    }
                }
                (None, None) => true,
            };
            if !matches {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QContext;

    fn ctx() -> QContext {
        QContext::exact(1, 2).unwrap()
    }

    fn poly_i64(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| Scalar::exact_int(c)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = poly_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(poly_i64(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn mul_and_eval_agree() {
        let p = poly_i64(&[1, -3, 2]);
        let r = poly_i64(&[5, 1]);
        let prod = p.mul(&r);
        let x = Scalar::exact_ratio(7, 3);
        assert_eq!(prod.eval(&x), p.eval(&x) * r.eval(&x));
    }

    #[test]
    fn scale_arg_matches_eval() {
        let ctx = ctx();
        let p = poly_i64(&[4, 0, -1, 2]);
        let c = ctx.rat(3, 5);
        let x = ctx.rat(-2, 7);
        assert_eq!(p.scale_arg(&c).eval(&x), p.eval(&(&c * &x)));
    }

    #[test]
    fn reversed_matches_eval_at_reciprocal() {
        let p = poly_i64(&[4, -1, 2]);
        let x = Scalar::exact_ratio(5, 3);
        for len in 3..6usize {
            let lhs = p.reversed(len).eval(&x);
            let rhs = x.powi(len as i64 - 1) * p.eval(&x.recip());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn compose_affine_matches_eval() {
        let p = poly_i64(&[1, 2, 3, 4]);
        let a = Scalar::exact_ratio(2, 3);
        let b = Scalar::exact_int(-5);
        let x = Scalar::exact_ratio(1, 7);
        assert_eq!(
            p.compose_affine(&a, &b).eval(&x),
            p.eval(&(&a * &x + &b))
        );
    }

    #[test]
    fn div_x_requires_zero_constant_term() {
        assert!(poly_i64(&[1, 2]).div_x().is_err());
        assert_eq!(poly_i64(&[0, 1, 2]).div_x().unwrap(), poly_i64(&[1, 2]));
    }

    #[test]
    fn derivative_of_cubic() {
        assert_eq!(poly_i64(&[7, 1, 2, 3]).derivative(), poly_i64(&[1, 4, 9]));
    }

    #[test]
    fn linear_from_root_evaluates_to_zero_at_root() {
        let r = Scalar::exact_ratio(9, 4);
        let p = Poly::linear_from_root(&r);
        assert!(p.eval(&r).is_zero());
        assert_eq!(p.degree(), Some(1));
    }
}
