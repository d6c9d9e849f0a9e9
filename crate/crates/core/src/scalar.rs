//! Scalar abstraction for the arithmetic kernel.
//!
//! The polynomial and linear-algebra layers are generic over a field-like
//! scalar. The engine instantiates them at [`Rat`] (arbitrary-precision
//! rationals, the only scalar for which canonical forms and exact zero
//! tests are meaningful) while the numeric oracles instantiate them at
//! `f64`. Concrete aliases live at the crate root.

use num::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::Neg;

/// Arbitrary-precision rational, the exact scalar of the engine.
pub type Rat = BigRational;

/// Field-like scalar usable by [`crate::poly::Poly`] and
/// [`crate::linalg::Matrix`].
pub trait Scalar:
    Num + Neg<Output = Self> + Signed + Clone + PartialEq + Debug + Display + 'static
{
    /// Embed an exact rational into this scalar.
    fn from_rat(r: &Rat) -> Self;

    /// Cosine / sine of `angle`, where exactness permits. Exact scalars
    /// only support angle 0; floats evaluate numerically.
    fn cos_of(angle: &Self) -> Option<Self>;
    fn sin_of(angle: &Self) -> Option<Self>;
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn cos_of(angle: &Self) -> Option<Self> {
        if angle.is_zero() {
            Some(Self::one())
        } else {
            None
        }
    }

    fn sin_of(angle: &Self) -> Option<Self> {
        if angle.is_zero() {
            Some(Self::zero())
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f64().expect("rational out of f64 range")
    }

    fn cos_of(angle: &Self) -> Option<Self> {
        Some(angle.cos())
    }

    fn sin_of(angle: &Self) -> Option<Self> {
        Some(angle.sin())
    }
}

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Integer as an exact rational.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(p.into())
}

/// `sqrt(r)` when `r` is the square of a rational.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    use num::bigint::BigInt;
    if r.is_negative() {
        return None;
    }
    let sq = |n: &BigInt| -> Option<BigInt> {
        let s = n.sqrt();
        if &(&s * &s) == n {
            Some(s)
        } else {
            None
        }
    };
    let num = sq(r.numer())?;
    let den = sq(r.denom())?;
    Some(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rational_square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-1, 4)), None);
        assert_eq!(rat_sqrt(&Rat::zero()), Some(Rat::zero()));
    }

    #[test]
    fn exact_trig_only_at_zero() {
        assert_eq!(Rat::cos_of(&Rat::zero()), Some(rat_int(1)));
        assert_eq!(Rat::sin_of(&Rat::zero()), Some(Rat::zero()));
        assert_eq!(Rat::cos_of(&rat(1, 2)), None);
    }
}
