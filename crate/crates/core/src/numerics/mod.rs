//! Precision-parameterized scalars, small determinants, and the sphere chord
//! primitive shared by every other module.

mod matrix;
mod real;
mod sphere;

pub use matrix::{det, SmallMatrix};
pub use real::{PrecisionPolicy, Real, DEFAULT_SIGNIFICAND_BITS, MIN_SIGNIFICAND_BITS};
pub use sphere::{second_sphere_intersection, Point};
