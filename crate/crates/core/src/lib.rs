//! Quantitative toolkit for vacuum fluctuations and motion.
//!
//! The crate covers vacuum and thermal correlation spectra linked by
//! fluctuation-dissipation relations, relativistic worldline kinematics with
//! the Abraham vector and the perfect-mirror radiation reaction, exact checks
//! of the conformal algebra, quantum Langevin position noise of a mirror in
//! vacuum, motional radiation from a Fabry-Perot cavity, quantum limits of
//! interferometric position measurements, and gravitational vacuum noise.
//!
//! All formulas are written with explicit `hbar`, `c`, `k_B` and `G` taken
//! from a [`Constants`] value. [`Constants::NATURAL`] sets all of them to one,
//! [`Constants::SI`] carries CODATA 2018 values.

pub mod cavity;
pub mod conformal_algebra;
mod error;
pub mod gravity;
pub mod measurement;
pub mod minkowski;
pub mod mirror_dynamics;
pub mod quadrature;
pub mod spectra;
mod units;
pub mod worldline;

pub use error::{Error, Result};
pub use units::{Constants, UnitSystem};
