//! Exact constructions around the Eulerian 3-matroid `Q(F)` of a 4-regular
//! graph and the isotropic 3-matroid `Z3(G)` of a circle graph.
//!
//! The crate builds edge-transition incidence matrices, cycle matrices,
//! touch-graph projections and the products `CM(F, Γ, D) · Θ(D, o)`, and
//! checks them against brute-force rank and determinant oracles: sheltering,
//! strictness, and total transversal unimodularity.
//!
//! All linear algebra is exact. Matrices are generic over [`Scalar`]; the
//! aliases below fix the default arbitrary-precision rational type.

pub mod cycle_spaces;
pub mod error;
pub mod euler;
pub mod fixtures;
pub mod four_regular;
pub mod graph;
pub mod linalg;
pub mod multimatroid;
pub mod representation;
pub mod reproduce;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::LabeledMatrix;
pub use scalar::Scalar;

/// Default exact scalar.
pub type Rational = num_rational::BigRational;

/// Label-indexed matrix over arbitrary-precision rationals.
pub type Matrix = LabeledMatrix<Rational>;

/// Label-indexed matrix over arbitrary-precision integers.
pub type IntMatrix = LabeledMatrix<num_bigint::BigInt>;

/// A representation whose matrix uses the default rational scalar.
pub type QRepresentation = representation::Representation<Rational>;
