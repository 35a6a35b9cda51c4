//! Operator growth in collective spin models.
//!
//! The crate builds spin-S operators and the Lipkin-Meshkov-Glick (LMG) and
//! Feingold-Peres (FP) Hamiltonians, runs the operator-space Lanczos recursion
//! (infinite-temperature or microcanonical inner product), evolves the
//! resulting Krylov chain, and computes out-of-time-order correlators. The
//! [`classical`] module holds the matching phase-space analysis: trajectories,
//! saddle points, the energy-resolved growth rate `alpha(E)` and a Lanczos
//! recursion over Poisson brackets of polynomials on the sphere.

pub mod classical;
pub(crate) mod dd;
pub mod error;
pub mod evolution;
pub mod fit;
pub mod krylov;
pub mod linalg;
pub mod models;
mod refine;
pub mod spin_algebra;

pub use error::{Error, Result};
pub use num_complex::Complex64;
