//! Exact q-Weierstrass weights of branch points on superelliptic curves.
//!
//! A curve `y^n = f(x)` with `f` separable of degree `d > n >= 2` is modelled
//! only through the pair `(n, d)`: every quantity computed here depends on
//! `(n, d, q)` alone, never on the coefficients of `f`.
//!
//! - [`semigroup`]: gaps of the numerical semigroup `<a, b>`.
//! - [`curve`]: the family `(n, d)`, its genus, and the exponent set indexing
//!   a basis of holomorphic q-differentials.
//! - [`weights`]: closed-form weight formulas, all evaluated in exact rationals.
//! - [`oracle`]: brute-force recomputation over the exponent set.

pub mod curve;
pub mod error;
pub mod oracle;
pub mod semigroup;
pub mod weights;

pub use curve::{CurveFamily, ExponentSet, QDifferentialSpace};
pub use error::{Error, Result};
pub use oracle::OracleReport;
pub use semigroup::{GapSet, SemigroupPair};
pub use weights::{BranchWeightReport, Corollary, FractionalSumArgs, WeightBreakdown};
