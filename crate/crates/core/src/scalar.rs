use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

/// Field elements the octonion and Jordan kernels are generic over.
///
/// Implemented for `f32`, `f64` and exact rationals (`num_rational::Ratio<i64>`),
/// so algebraic identities can be checked without rounding.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + Debug + Send + Sync + 'static {
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn from_i32(v: i32) -> Self {
        let mut acc = Self::zero();
        let unit = if v < 0 { -Self::one() } else { Self::one() };
        for _ in 0..v.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }
}

impl<T> Scalar for T where T: Num + Neg<Output = T> + Clone + PartialEq + Debug + Send + Sync + 'static {}
