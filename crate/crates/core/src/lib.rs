//! Exact and numeric tools for Jack measures on partitions.
//!
//! The crate is organised bottom-up:
//!
//! - [`partition`]: partitions, anisotropic profile extrema, transition measures
//!   and the `ch` / `ch^∨` linear statistics.
//! - [`fock`]: the polynomial algebra in the modes `V_k` with creation,
//!   annihilation and the deformed inner product.
//! - [`lax`]: the Lax operator on Fock space tensor heights and the commuting
//!   Hamiltonians `O_ℓ`.
//! - [`jack`]: Jack polynomials built as joint eigenvectors of the `O_ℓ`.
//! - [`measure`]: Jack measures, sampling and brute-force moments/cumulants.
//! - [`ribbon`]: ribbon-path enumeration and the all-order cumulant expansion.
//! - [`toeplitz`]: floating point Toeplitz/Wiener-Hopf numerics (limit shape,
//!   covariance and mean shift).
//! - [`plancherel`]: closed forms for the Plancherel symbol `w + 1/w`.
//!
//! Exact arithmetic uses [`Q`], an arbitrary precision rational.

pub mod cumulant;
pub mod error;
pub mod fock;
pub mod jack;
pub mod lax;
pub mod linalg;
pub mod measure;
pub mod partition;
pub mod plancherel;
pub mod rational;
pub mod ribbon;
pub mod specfile;
pub mod toeplitz;

pub use error::{Error, Result};
pub use fock::{FockVector, KernelPoly, ModeAssignment};
pub use partition::{EpsilonPair, Partition};
pub use rational::Q;
