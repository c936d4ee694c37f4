//! Exact enumeration of fixed polyominoes and exact-rational bounds on their
//! growth constant.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`geometry`]: lattice cells, polyominoes, concatenation and the
//!   constructibility test, compositions, and balanced spanning-tree splits.
//! * [`enumeration`]: a canonical-growth enumerator that counts (and
//!   optionally streams) every fixed polyomino up to a size limit.
//! * [`table`]: arbitrary-precision count tables with text and JSON I/O.
//! * [`sequences`]: sequence algebra over count tables: the inconstructible
//!   count Q(n), monotonicity checks, the majorizing sequence U(n), and the
//!   exact ratio lower bound on the growth constant.
//! * [`bounds`]: the generating-function bound: the polynomial g(x), the
//!   square-root-free discriminant predicate, the decimal-grid search for the
//!   largest certified radius, and the resulting upper bound on the growth
//!   constant.
//!
//! All sequence and bound computations use exact integer and rational
//! arithmetic; no floating point is involved in any comparison.

pub mod bounds;
pub mod enumeration;
pub mod geometry;
pub mod sequences;
pub mod table;

pub use geometry::{Cell, Polyomino};
pub use table::{CountTable, TableOrigin};

/// Arbitrary-precision nonnegative integer used for all counts.
pub type Count = num_bigint::BigUint;

/// Exact rational scalar in canonical form (reduced, positive denominator).
pub type Rational = num_rational::BigRational;
