//! The arithmetic context: the base p = q^{1/2} and mode-aware constructors.

use alloc::format;
use alloc::string::String;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{HalfInt, Scalar};
use crate::error::{Error, Result};

/// Arithmetic mode of a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// Fixes the base p = q^{1/2} (hence q = p²) and the arithmetic mode.
///
/// Every scalar used with a context must be of the matching mode; the
/// constructors [`QContext::int`], [`QContext::rat`], and the q-power helpers
/// mint mode-correct values. q-powers take [`HalfInt`] exponents and are
/// evaluated as integer powers of p, which keeps exact mode closed: no
/// root extractions ever happen there.
#[derive(Clone, Debug, PartialEq)]
pub struct QContext {
    p: Scalar,
    q: Scalar,
}

impl QContext {
    /// Exact context from p = num/den. Requires p ∉ {0, 1, −1}.
    pub fn exact(num: i64, den: i64) -> Result<QContext> {
        if den == 0 {
            return Err(Error::InvalidParameter("p has zero denominator".into()));
        }
        Self::exact_from_ratio(match Scalar::exact_ratio(num, den) {
            Scalar::Exact(r) => r,
            Scalar::Float(_) => unreachable!(),
        })
    }

    /// Exact context from an arbitrary rational p ∉ {0, 1, −1}.
    pub fn exact_from_ratio(p: BigRational) -> Result<QContext> {
        if p.is_zero() || p.is_one() || (-&p).is_one() {
            return Err(Error::InvalidParameter(
                "exact mode requires p outside {0, 1, -1}".into(),
            ));
        }
        let q = &p * &p;
        Ok(QContext {
            p: Scalar::Exact(p),
            q: Scalar::Exact(q),
        })
    }

    /// Float context from a complex p ∉ {0, 1, −1}.
    pub fn float(p: Complex64) -> Result<QContext> {
        if p.is_zero() || p == Complex64::new(1.0, 0.0) || p == Complex64::new(-1.0, 0.0) {
            return Err(Error::InvalidParameter(
                "float mode requires p outside {0, 1, -1}".into(),
            ));
        }
        Ok(QContext {
            p: Scalar::Float(p),
            q: Scalar::Float(p * p),
        })
    }

    /// Float context with real p.
    pub fn float_re(p: f64) -> Result<QContext> {
        Self::float(Complex64::new(p, 0.0))
    }

    pub fn mode(&self) -> Mode {
        if self.p.is_exact() {
            Mode::Exact
        } else {
            Mode::Float
        }
    }

    pub fn is_exact(&self) -> bool {
        self.p.is_exact()
    }

    /// The base p = q^{1/2}.
    pub fn p(&self) -> &Scalar {
        &self.p
    }

    /// The deformation parameter q = p².
    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// Mode-correct zero.
    pub fn zero(&self) -> Scalar {
        match self.mode() {
            Mode::Exact => Scalar::exact_int(0),
            Mode::Float => Scalar::float_re(0.0),
        }
    }

    /// Mode-correct one.
    pub fn one(&self) -> Scalar {
        match self.mode() {
            Mode::Exact => Scalar::exact_int(1),
            Mode::Float => Scalar::float_re(1.0),
        }
    }

    /// Mode-correct integer.
    pub fn int(&self, n: i64) -> Scalar {
        match self.mode() {
            Mode::Exact => Scalar::exact_int(n),
            Mode::Float => Scalar::float_re(n as f64),
        }
    }

    /// Mode-correct rational num/den (floated in float mode).
    pub fn rat(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self.mode() {
            Mode::Exact => Scalar::exact_ratio(num, den),
            Mode::Float => Scalar::float_re(num as f64 / den as f64),
        }
    }

    /// Checks that a scalar carries this context's mode.
    pub fn check_mode(&self, s: &Scalar, what: &str) -> Result<()> {
        if s.is_exact() == self.is_exact() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{what} does not match the context arithmetic mode"
            )))
        }
    }

    /// q^e for a half-integer exponent e, computed as p^(2e). Total in both
    /// modes, including negative exponents.
    pub fn qpow(&self, e: HalfInt) -> Scalar {
        self.p.powi(e.twice)
    }

    /// q^n for an integer n.
    pub fn qpow_int(&self, n: i64) -> Scalar {
        self.qpow(HalfInt::from_int(n))
    }

    /// q^{k(k+1)/2}, the triangular-number power that shows up in
    /// descending-basis coefficients.
    pub fn qpow_triangular(&self, k: i64) -> Scalar {
        self.qpow_int(k * (k + 1) / 2)
    }

    /// q^{e/2}. Since q^{e/2} = p^e, exact mode requires e to be an integer;
    /// float mode takes the principal branch for half-odd e.
    pub fn half_qpow(&self, e: HalfInt) -> Result<Scalar> {
        match e.try_halve() {
            Some(half) => Ok(self.qpow(half)),
            None => match &self.p {
                Scalar::Exact(_) => Err(Error::FloatModeRequired(
                    "q-power with quarter-integer exponent".into(),
                )),
                Scalar::Float(z) => Ok(Scalar::Float(z.powf(e.twice as f64 / 2.0))),
            },
        }
    }

    /// q-Pochhammer symbol (a; q)_n = ∏_{j=0}^{n−1} (1 − a·q^j).
    ///
    /// n must be ≥ 0; the inverted product for negative n is not defined
    /// here. (a; q)_0 = 1.
    pub fn qpoch(&self, a: &Scalar, n: i64) -> Result<Scalar> {
        if n < 0 {
            return Err(Error::NegativePochhammerOrder(n));
        }
        let mut acc = self.one();
        let mut aq = a.clone();
        for _ in 0..n {
            acc = acc * (self.one() - &aq);
            aq = aq * &self.q;
        }
        Ok(acc)
    }

    /// The single factor (1 − a·q^n) by which (a;q)_{n+1} extends (a;q)_n.
    pub fn qpoch_ratio_step(&self, a: &Scalar, n: i64) -> Scalar {
        self.one() - a * self.qpow_int(n)
    }

    /// True when (a;q)_j stays nonzero for all j ≤ n, i.e. no factor
    /// (1 − a·q^j) with j < n vanishes. Exact mode: literal; float mode:
    /// nonzero within [`super::RESONANCE_TOLERANCE`].
    pub fn qpoch_nonvanishing(&self, a: &Scalar, n: i64) -> bool {
        let mut aq = a.clone();
        for _ in 0..n {
            let factor = self.one() - &aq;
            let vanishes = if self.is_exact() {
                factor.is_zero()
            } else {
                factor.magnitude() <= super::RESONANCE_TOLERANCE
            };
            if vanishes {
                return false;
            }
            aq = aq * &self.q;
        }
        true
    }

    /// Like [`QContext::qpoch`] but fails with the named factor when a zero
    /// factor would make a later division impossible.
    pub fn qpoch_checked(&self, a: &Scalar, n: i64, name: &str) -> Result<Scalar> {
        if n < 0 {
            return Err(Error::NegativePochhammerOrder(n));
        }
        let mut acc = self.one();
        let mut aq = a.clone();
        for j in 0..n {
            let factor = self.one() - &aq;
            if factor.is_zero() {
                return Err(Error::VanishingFactor {
                    factor: String::from(name),
                    n: j,
                });
            }
            acc = acc * factor;
            aq = aq * &self.q;
        }
        Ok(acc)
    }
}
