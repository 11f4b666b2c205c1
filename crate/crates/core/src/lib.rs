pub mod blowup;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod function_field;
pub mod linalg;
pub mod orbit;
pub mod poly;
pub mod reduction;
pub mod report;
pub mod riemann_roch;
pub mod scalar;
pub mod series;
pub mod sklyanin;
pub mod thcr;
pub mod virtual_blowup;

pub use error::{Error, Result};
pub use scalar::Field;

/// Exact rationals, the scalar field of every computation on the curve.
pub type Rational = num_rational::BigRational;
