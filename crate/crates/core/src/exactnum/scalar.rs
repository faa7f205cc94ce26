use std::fmt;

use num_traits::{FromPrimitive, Num, Signed};

/// Field elements the sparse kernel can work over.
///
/// Any exact signed field from `num` qualifies; the crate itself uses
/// [`crate::Rational`] everywhere outside this module.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Signed + FromPrimitive + Send + Sync {
    /// The image of an integer.
    fn int(x: i64) -> Self {
        Self::from_i64(x).expect("every i64 embeds in the field")
    }
}

impl<T> Scalar for T where T: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Signed + FromPrimitive + Send + Sync {}
