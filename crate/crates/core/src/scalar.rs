use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::Signed;

/// Exact integer coefficient type.
///
/// Everything in this crate is generic over the coefficient ring. Fixed width
/// integers (`i64`, `i128`) are fast but can overflow on deep towers; the crate
/// root aliases use [`num_bigint::BigInt`].
pub trait Scalar:
    Integer + Signed + Clone + Hash + Debug + Display + From<i64> + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + From<i64> + Send + Sync + 'static
{
}
