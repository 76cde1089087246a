//! Exact arithmetic: arbitrary-precision integers, real quadratic fields,
//! 2x2 integer matrices, and floor sums of irrational linear forms.

pub mod floorsum;
pub mod matrix;
pub mod quad;

pub use floorsum::floor_sum;
pub use matrix::{EigenData, IntMatrix2};
pub use quad::QuadraticNumber;
