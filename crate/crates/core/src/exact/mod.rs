//! Exact arithmetic over Q(√3), points, and the isometry group used for placements.

mod isometry;
mod point;
mod scalar;

pub use isometry::Isometry;
pub use point::{Point, Vector};
pub use scalar::Scalar;

use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithError {
    DivisionByZero,
    ZeroDenominator,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivisionByZero => f.write_str("division by zero"),
            ArithError::ZeroDenominator => f.write_str("zero denominator"),
        }
    }
}
