//! Prudent polygons counted by area: exact enumeration by generating
//! functions and by brute force, and the asymptotics of the 3-sided counts.

// `!(x < y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{BigFloat, Precision};

/// Exact integers.
pub type Int = num_bigint::BigInt;
/// Multiple-precision real.
pub type Mp = scalar::BigFloat;
/// Multiple-precision complex.
pub type MpComplex = num_complex::Complex<scalar::BigFloat>;
/// Exact univariate series in q.
pub type IntSeries1 = series::Series1<Int>;
pub type IntSeries2 = series::Series2<Int>;
pub type IntSeries3 = series::Series3<Int>;
/// Float series in x = 2q.
pub type FloatSeries1 = series::Series1<Mp>;
