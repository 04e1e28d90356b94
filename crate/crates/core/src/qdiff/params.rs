//! Parameter sets for the degree-two and degree-three equations.

use alloc::format;

use crate::error::{Error, Result};
use crate::qcore::{HalfInt, QContext, Scalar};

/// Parameters of the degree-two family: half-integer singularity data
/// (h₁, h₂, l₁, l₂) and exponents (α₁, α₂) at ∞, plus nonzero locations
/// t₁, t₂.
///
/// The constructor enforces the parity constraint that makes both λ (the
/// smaller exponent at 0) and σ/2 half-integers, so every q-power in the
/// built equation is an integer power of p.
#[derive(Clone, Debug, PartialEq)]
pub struct Params2 {
    pub h1: HalfInt,
    pub h2: HalfInt,
    pub l1: HalfInt,
    pub l2: HalfInt,
    pub alpha1: HalfInt,
    pub alpha2: HalfInt,
    pub t1: Scalar,
    pub t2: Scalar,
}

impl Params2 {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ctx: &QContext,
        h1: HalfInt,
        h2: HalfInt,
        l1: HalfInt,
        l2: HalfInt,
        alpha1: HalfInt,
        alpha2: HalfInt,
        t1: Scalar,
        t2: Scalar,
    ) -> Result<Params2> {
        for (t, name) in [(&t1, "t1"), (&t2, "t2")] {
            ctx.check_mode(t, name)?;
            if t.is_zero() {
                return Err(Error::InvalidParameter(format!("{name} must be nonzero")));
            }
        }
        let parity = (h1 + h2 - l1 - l2 - alpha1 - alpha2).twice;
        if parity % 2 != 0 {
            return Err(Error::InvalidParameter(
                "h1+h2-l1-l2-alpha1-alpha2 must be an integer (parity constraint)".into(),
            ));
        }
        Ok(Params2 {
            h1,
            h2,
            l1,
            l2,
            alpha1,
            alpha2,
            t1,
            t2,
        })
    }

    /// λ = (h₁+h₂−l₁−l₂−α₁−α₂+1)/2: the smaller characteristic exponent at
    /// x = 0 of the degree-two equation.
    pub fn lambda(&self) -> HalfInt {
        ((self.h1 + self.h2 - self.l1 - self.l2 - self.alpha1 - self.alpha2) + 1)
            .try_halve()
            .expect("parity was checked at construction")
    }

    /// σ = h₁+h₂+l₁+l₂+α₁+α₂.
    pub fn sigma(&self) -> HalfInt {
        self.h1 + self.h2 + self.l1 + self.l2 + self.alpha1 + self.alpha2
    }

    /// σ/2, always a half-integer under the parity constraint.
    pub fn sigma_half(&self) -> HalfInt {
        self.sigma()
            .try_halve()
            .expect("parity was checked at construction")
    }

    /// The pair (h, l, t) for index i ∈ {1, 2}.
    pub fn site(&self, i: usize) -> (HalfInt, HalfInt, &Scalar) {
        match i {
            1 => (self.h1, self.l1, &self.t1),
            2 => (self.h2, self.l2, &self.t2),
            _ => panic!("site index must be 1 or 2"),
        }
    }

    /// Swaps the two sites (h₁, l₁, t₁) ↔ (h₂, l₂, t₂); the built equation
    /// is unchanged.
    pub fn swapped(&self) -> Params2 {
        Params2 {
            h1: self.h2,
            h2: self.h1,
            l1: self.l2,
            l2: self.l1,
            alpha1: self.alpha1,
            alpha2: self.alpha2,
            t1: self.t2.clone(),
            t2: self.t1.clone(),
        }
    }
}

/// Parameters of the degree-three family: three sites (hᵢ, lᵢ, tᵢ) and one
/// exponent parameter α (the exponents at ∞ are α and α+1).
#[derive(Clone, Debug, PartialEq)]
pub struct Params3 {
    pub h: [HalfInt; 3],
    pub l: [HalfInt; 3],
    pub alpha: HalfInt,
    pub t: [Scalar; 3],
}

impl Params3 {
    pub fn new(
        ctx: &QContext,
        h: [HalfInt; 3],
        l: [HalfInt; 3],
        alpha: HalfInt,
        t: [Scalar; 3],
    ) -> Result<Params3> {
        for (i, ti) in t.iter().enumerate() {
            ctx.check_mode(ti, "t")?;
            if ti.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "t{} must be nonzero",
                    i + 1
                )));
            }
        }
        let parity: HalfInt =
            h.iter().copied().sum::<HalfInt>() - l.iter().copied().sum::<HalfInt>();
        if parity.twice % 2 != 0 {
            return Err(Error::InvalidParameter(
                "sum(h)-sum(l) must be an integer (parity constraint)".into(),
            ));
        }
        Ok(Params3 { h, l, alpha, t })
    }

    /// ν = (Σh − Σl + 1)/2; the characteristic exponents at x = 0 are
    /// ν−α and ν−α+1.
    pub fn nu(&self) -> HalfInt {
        let diff: HalfInt =
            self.h.iter().copied().sum::<HalfInt>() - self.l.iter().copied().sum::<HalfInt>();
        (diff + 1)
            .try_halve()
            .expect("parity was checked at construction")
    }

    /// Σh + Σl, needed with an even twice-value for the built equation.
    pub fn sum_all(&self) -> HalfInt {
        self.h.iter().copied().sum::<HalfInt>() + self.l.iter().copied().sum::<HalfInt>()
    }

    /// The site (hᵢ, lᵢ, tᵢ), i ∈ {1, 2, 3}.
    pub fn site(&self, i: usize) -> (HalfInt, HalfInt, &Scalar) {
        assert!((1..=3).contains(&i), "site index must be 1, 2, or 3");
        (self.h[i - 1], self.l[i - 1], &self.t[i - 1])
    }

    /// Applies a permutation of the three sites; the built equation is
    /// unchanged.
    pub fn permuted(&self, perm: [usize; 3]) -> Params3 {
        let pick = |k: usize| (self.h[perm[k] - 1], self.l[perm[k] - 1], self.t[perm[k] - 1].clone());
        let (h1, l1, t1) = pick(0);
        let (h2, l2, t2) = pick(1);
        let (h3, l3, t3) = pick(2);
        Params3 {
            h: [h1, h2, h3],
            l: [l1, l2, l3],
            alpha: self.alpha,
            t: [t1, t2, t3],
        }
    }
}
