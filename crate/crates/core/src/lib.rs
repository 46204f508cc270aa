//! Numerical laboratory for the indirect-Lagrangian planar oscillator.
//!
//! The crate covers the classical side (trajectories, the four oscillator
//! Lagrangians, SU(1,1) boosts, PT, Noether charges and soldering of the two
//! pseudo-chiral modes), the constrained-system brackets of those modes, the
//! truncated Fock-space realization of the pseudo-chiral ladder algebra, the
//! antilinear `η = PT` machinery, and the Jordan-Schwinger realizations of
//! SU(1,1) and SU(2). The [`report`] module runs all of it as named
//! verification suites and serializes the outcome.

pub mod classical;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod pseudoherm;
pub mod report;
pub mod su11;
pub mod symplectic;
pub mod tolerance;

pub use error::{Error, Result};
pub use fock::{ModeBasis, OperatorMatrix, Representation};
pub use linalg::{CMatrix, C64};
pub use report::{Check, Report, RunConfig, Suite};
