//! Coefficient scalars for the polynomial core.
//!
//! Polynomial arithmetic only needs a commutative ring with exact equality;
//! the PSD check additionally needs ordered division. Both traits are
//! assembled from `num-traits` so the core stays scalar-agnostic, with the
//! exact rational instantiation aliased at the crate root.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Signed, Zero};

/// Commutative ring scalar with exact equality.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
{
}

impl<T> Scalar for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + FromPrimitive
{
}

/// Ordered field scalar, needed for the exact LDL^T positivity check.
pub trait Field: Scalar + Div<Output = Self> + PartialOrd + Signed {}

impl<T> Field for T where T: Scalar + Div<Output = T> + PartialOrd + Signed {}

/// Converts a machine integer into the scalar.
pub fn from_int<C: Scalar>(v: i64) -> C {
    C::from_i64(v).expect("scalar cannot represent the integer")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn rational_is_field() {
        fn assert_field<C: Field>() {}
        assert_field::<BigRational>();
        assert_field::<f64>();
        let half: BigRational = from_int::<BigRational>(1) / from_int::<BigRational>(2);
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(from_int::<BigRational>(-3).to_string(), "-3");
    }
}
