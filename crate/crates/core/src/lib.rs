//! Exact combinatorics of weighted digraph polyhedra and tropical convexity.
//!
//! The crate is organised bottom-up:
//!
//! - [`tropical`]: min-plus arithmetic over exact rationals, tropical matrices,
//!   tropical determinants and genericity tests.
//! - [`wdp`]: weighted digraph polyhedra `Q(W) = { x : x_i - x_j <= w_ij }`,
//!   their Kleene stars, faces, projections, recession cones and the face
//!   lattices of digraph cones.
//! - [`envelope`]: envelopes of point configurations, covector graphs and the
//!   dual regular subdivisions of subpolytopes of products of simplices.
//! - [`covector`]: sectors, covector decompositions of the torus and of the
//!   tropical projective space, tropical halfspace systems, pureness, signed
//!   cells and tangent digraphs.
//! - [`io`]: JSON formats, DOT export and SVG figures.
//!
//! All indices in the library API are 0-based. The file formats in [`io`]
//! use 1-based indices.

pub mod covector;
pub mod envelope;
mod error;
pub(crate) mod graph;
pub mod io;
mod limits;
pub mod tropical;
pub mod wdp;

pub use error::{Error, Result};
pub use limits::Limits;

pub use num_rational::BigRational;

/// Shorthand for an exact integer-valued rational.
pub fn rat(value: i64) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Shorthand for the exact rational `numer / denom`.
///
/// Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}
