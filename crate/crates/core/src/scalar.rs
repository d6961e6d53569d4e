//! Scalar coefficient types.
//!
//! Every algebraic routine in this crate is written against [`Scalar`], a
//! field with exact equality. Decisions such as "is this remainder zero" are
//! only trustworthy when the scalar is exact, which is why the contract
//! checks are normally instantiated at [`Rational`](crate::Rational).
//! Floating-point instantiations are supported for the numerical side
//! (simulation) and for quick experiments.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::Num;

/// A field element usable as a polynomial coefficient.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
}

/// Multiplicative inverse; `None` for zero.
pub(crate) fn recip<T: Scalar>(x: &T) -> Option<T> {
    if x.is_zero() {
        None
    } else {
        Some(T::one() / x.clone())
    }
}
