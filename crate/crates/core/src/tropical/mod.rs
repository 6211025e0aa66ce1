//! Min-plus arithmetic: `a ⊕ b = min(a, b)`, `a ⊙ b = a + b`, over exact
//! rationals extended by `+∞`.

mod det;
mod matrix;
mod value;

pub use det::{is_generic, trop_det, GenericityReport, TropicalDetResult};
pub use matrix::{trop_mat_mul, TropicalMatrix};
pub use value::TropicalValue;
