//! The scalar sum type: exact big rational or complex double.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SCALAR_BIT_LIMIT;

/// A number in one of the two arithmetic modes.
///
/// Arithmetic between the two variants is a programming error and panics;
/// code that accepts user input must normalize everything through one
/// [`super::QContext`] first. Division by an exact zero and exact results
/// larger than [`SCALAR_BIT_LIMIT`] bits also panic.
#[derive(Clone, Debug)]
pub enum Scalar {
    /// Arbitrary-precision rational.
    Exact(BigRational),
    /// Complex double.
    Float(Complex64),
}

/// Exact square root of a rational, if it is a perfect square.
pub fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let num_root = num.sqrt();
    let den_root = den.sqrt();
    if &(&num_root * &num_root) == num && &(&den_root * &den_root) == den {
        Some(BigRational::new(num_root, den_root))
    } else {
        None
    }
}

fn capped(r: BigRational) -> BigRational {
    let bits = r.numer().bits() + r.denom().bits();
    assert!(
        bits <= SCALAR_BIT_LIMIT,
        "exact scalar exceeded the {SCALAR_BIT_LIMIT}-bit size cap ({bits} bits)"
    );
    r
}

impl Scalar {
    /// Exact rational from an integer.
    pub fn exact_int(n: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational num/den. Panics on zero denominator.
    pub fn exact_ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Real float scalar.
    pub fn float_re(x: f64) -> Scalar {
        Scalar::Float(Complex64::new(x, 0.0))
    }

    /// True in exact mode.
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Zero in the same arithmetic mode as `self`.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::exact_int(0),
            Scalar::Float(_) => Scalar::float_re(0.0),
        }
    }

    /// One in the same arithmetic mode as `self`.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::exact_int(1),
            Scalar::Float(_) => Scalar::float_re(1.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(z) => z.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(z) => z.re == 1.0 && z.im == 0.0,
        }
    }

    /// Absolute value as f64 (approximate in exact mode). Used only for
    /// diagnostics and float-mode tolerance checks.
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().map(f64::abs).unwrap_or(f64::INFINITY),
            Scalar::Float(z) => z.norm(),
        }
    }

    /// Numeric value as complex double (approximate in exact mode).
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Float(z) => *z,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                assert!(!r.is_zero(), "division by exact zero");
                Scalar::Exact(capped(r.recip()))
            }
            Scalar::Float(z) => Scalar::Float(z.inv()),
        }
    }

    /// Integer power (negative allowed; panics on 0^negative in exact mode).
    pub fn powi(&self, n: i64) -> Scalar {
        if n < 0 {
            return self.recip().powi(-n);
        }
        match self {
            Scalar::Exact(r) => {
                let e = i32::try_from(n).expect("exponent out of range");
                Scalar::Exact(capped(r.pow(e)))
            }
            Scalar::Float(z) => {
                let e = i32::try_from(n).expect("exponent out of range");
                Scalar::Float(z.powi(e))
            }
        }
    }

    /// Square root: `Some` when representable (always in float mode, perfect
    /// rational squares in exact mode).
    pub fn try_sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(r) => exact_sqrt(r).map(Scalar::Exact),
            Scalar::Float(z) => Some(Scalar::Float(z.sqrt())),
        }
    }

    /// Equality up to relative tolerance in float mode; literal equality in
    /// exact mode.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(_), Scalar::Exact(_)) => self == other,
            (Scalar::Float(a), Scalar::Float(b)) => {
                let scale = a.norm().max(b.norm()).max(1.0);
                (a - b).norm() <= tol * scale
            }
            _ => panic!("mixed exact and float scalars in one operation"),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => panic!("mixed exact and float scalars in one operation"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{}{}{}i", z.re, if z.im < 0.0 { "" } else { "+" }, z.im)
                }
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(capped(a $op b)),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => panic!("mixed exact and float scalars in one operation"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by exact zero");
                Scalar::Exact(capped(a / b))
            }
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => panic!("mixed exact and float scalars in one operation"),
        }
    }
}
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}
impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        (&self).div(rhs)
    }
}
impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::exact_ratio(n, d)
    }

    #[test]
    fn exact_arithmetic_is_exact() {
        let a = rat(1, 3);
        let b = rat(1, 6);
        assert_eq!(&a + &b, rat(1, 2));
        assert_eq!(&a - &b, rat(1, 6));
        assert_eq!(&a * &b, rat(1, 18));
        assert_eq!(&a / &b, rat(2, 1));
        assert_eq!(-&a, rat(-1, 3));
    }

    #[test]
    fn powi_handles_negative_exponents() {
        assert_eq!(rat(2, 3).powi(-2), rat(9, 4));
        assert_eq!(rat(2, 3).powi(0), rat(1, 1));
        assert_eq!(rat(2, 3).powi(3), rat(8, 27));
    }

    #[test]
    fn exact_sqrt_detects_perfect_squares() {
        assert_eq!(rat(9, 4).try_sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).try_sqrt(), None);
        assert_eq!(rat(-1, 1).try_sqrt(), None);
    }

    #[test]
    #[should_panic(expected = "division by exact zero")]
    fn division_by_exact_zero_panics() {
        let _ = rat(1, 1) / rat(0, 1);
    }

    #[test]
    #[should_panic(expected = "mixed exact and float")]
    fn mode_mixing_panics() {
        let _ = rat(1, 1) + Scalar::float_re(1.0);
    }

    #[test]
    fn float_approx_eq_uses_relative_tolerance() {
        let a = Scalar::float_re(1.0);
        let b = Scalar::float_re(1.0 + 1e-12);
        assert!(a.approx_eq(&b, 1e-10));
        assert!(!a.approx_eq(&Scalar::float_re(1.1), 1e-10));
    }

    #[test]
    fn display_forms() {
        assert_eq!(alloc::format!("{}", rat(3, 2)), "3/2");
        assert_eq!(alloc::format!("{}", rat(4, 2)), "2");
        assert_eq!(alloc::format!("{}", Scalar::float_re(0.5)), "0.5");
    }
}
