//! Sharpened Hardy weight on the half-line graph.
//!
//! * [`weight`]: the classical weight `1/(4n^2)`, the improved weight
//!   `2 - sqrt(1 + 1/n) - sqrt(1 - 1/n)` with its exact series
//!   coefficients, and potentials `Δu / u` of positive functions.
//! * [`operator`]: Dirichlet and weighted Laplacians, the energy and
//!   weighted quadratic forms, and the ground state transform.
//! * [`spectral`]: truncated pencils and Sturm-sequence bisection for the
//!   best constant on finite windows.
//! * [`verify`]: seeded numerical verification producing a
//!   [`VerificationReport`].

pub mod error;
pub mod operator;
pub mod precise;
pub mod rational;
pub mod sequence;
pub mod spectral;
pub mod verify;
pub mod weight;

pub use error::{HardyError, Result};
pub use precise::{Fixed, Precision};
pub use rational::ExactRational;
pub use sequence::CompactSequence;
pub use spectral::{min_generalized_eigenvalue, TruncatedOperatorPair, DEFAULT_EIGEN_TOL};
pub use verify::{run_verification, VerificationConfig, VerificationReport};
pub use weight::{
    classical_hardy_weight, ground_state, improved_weight_closed, improved_weight_series,
    series_coefficient, weight_from_positive_solution, ClassicalWeight, GroundState,
    ImprovedWeight, Scalar, WeightFunction,
};
