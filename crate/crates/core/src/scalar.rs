//! Exact integer scalars shared by the matrix and class-function code.
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

pub trait ExactInt:
    Integer + Signed + NumAssign + Copy + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + NumAssign + Copy + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

pub type Exact<T> = Ratio<T>;

/// Lifts a machine integer into any exact scalar.
pub fn lift<T: ExactInt>(v: i64) -> T {
    T::from_i64(v).expect("value fits the scalar type")
}
