//! Exact computer algebra for wreath Macdonald polynomials.
//!
//! The crate is organized in layers:
//!
//! - [`ratfield`]: canonical rational functions in `q, t, u, Q, D, v, z_i`
//!   with big-integer coefficients, plus truncated Laurent series;
//! - [`partitions`]: partitions, Maya diagrams, r-core/r-quotient
//!   decomposition, colored box character sums;
//! - [`symfunc`]: the ring of r-colored symmetric functions with matrix
//!   plethysm, basis conversions, pairings and Cauchy kernels;
//! - [`wreath`]: wreath Macdonald polynomials themselves, their
//!   eigenoperators, delta-function series and the identity checkers;
//! - [`vertexops`]: Fock-space matrix elements and the constant-term
//!   realizations of the diagonal operators, verified in series mode.
//!
//! Everything is exact: identity checks reduce to equality of canonical
//! forms, or equality of truncated series with exact coefficients.

pub mod partitions;
pub mod ratfield;
pub mod symfunc;
pub mod vertexops;
pub mod wreath;

pub use partitions::{CoreLabel, MayaDiagram, Partition};
pub use ratfield::{MultiPoly, Monomial, RatFunc};
pub use symfunc::{ColoredIndex, MultiSymFunc, PlethMatrix};
pub use wreath::{HTable, WreathPoly};
