//! Half-integer exponents stored as twice their value.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, Mul, Neg, Sub};

/// An element of (1/2)ℤ, stored as `twice` = 2·value.
///
/// All exponent parameters of the equations (h, l, α, β and the derived λ, ν)
/// live here, so sums, differences, and the parity checks that decide whether
/// a combined exponent is itself half-integral are plain integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    /// Twice the represented value.
    pub twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    /// Value `twice/2`.
    pub const fn new(twice: i64) -> HalfInt {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> HalfInt {
        HalfInt { twice: 2 * n }
    }

    pub const fn is_integer(&self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if this is an integer.
    pub const fn as_integer(&self) -> Option<i64> {
        if self.twice % 2 == 0 {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    /// Half of this value, if still a half-integer (i.e. `twice` is even).
    pub const fn try_halve(&self) -> Option<HalfInt> {
        if self.twice % 2 == 0 {
            Some(HalfInt { twice: self.twice / 2 })
        } else {
            None
        }
    }

    /// Approximate f64 value, for float-mode exponentiation.
    pub fn to_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::new(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::new(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::new(-self.twice)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt::new(self.twice + 2 * rhs)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt::new(self.twice - 2 * rhs)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt::new(self.twice * rhs)
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, Add::add)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_parity() {
        let h = HalfInt::HALF;
        assert_eq!(h + h, HalfInt::ONE);
        assert!((h + h).is_integer());
        assert!(!h.is_integer());
        assert_eq!((h + 1).twice, 3);
        assert_eq!((h - 1).twice, -1);
        assert_eq!((h * 3).twice, 3);
        assert_eq!(-h, HalfInt::new(-1));
        assert_eq!(HalfInt::from_int(2).as_integer(), Some(2));
        assert_eq!(h.as_integer(), None);
        assert_eq!(HalfInt::new(6).try_halve(), Some(HalfInt::new(3)));
        assert_eq!(HalfInt::new(3).try_halve(), None);
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", HalfInt::new(3)), "3/2");
        assert_eq!(alloc::format!("{}", HalfInt::new(4)), "2");
        assert_eq!(alloc::format!("{}", HalfInt::new(-1)), "-1/2");
    }
}
