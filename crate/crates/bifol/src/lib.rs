//! Exact invariants of bifoliated planes built from hyperbolic matrices in
//! SL(2,Z), together with the combinatorial model of totally periodic planes.
//!
//! The library computes, with no floating point anywhere on the exact path:
//!
//! - eigen-slopes of hyperbolic integer matrices as elements of real
//!   quadratic fields ([`exact`]);
//! - periodic continued fractions, convergents, and good rational
//!   approximations of the second kind ([`contfrac`]);
//! - lattice crossing points (empty-parallelogram points ordered along the
//!   contracting eigenline) and the periodic cluster word extracted from
//!   them ([`lattice`]);
//! - plane-distinguishing verdicts and GL(2,Z) conjugacy witnesses for
//!   matrix powers ([`invariant`]);
//! - fat graphs, lozenge complexes, trees of scalloped regions glued into
//!   plane complexes, and the dense ordered set used in the equivalence
//!   construction ([`scalloped`]).
//!
//! The `bifol` binary exposes all of it behind batch subcommands with JSON,
//! text, and SVG output.

pub mod contfrac;
pub mod error;
pub mod exact;
pub mod lattice;

pub use error::{Error, Result};
pub use exact::{EigenData, IntMatrix2, QuadraticNumber};
