//! Independent brute-force validators for the closed-form potential and the
//! scattering coefficients.
//!
//! Two routes, deliberately disjoint from the closed forms they check:
//! * [`pv::pv_quadrature_potential`] integrates the spectral integral
//!   numerically, handling the pole by subtraction.
//! * [`wavepacket::evolve_wavepacket`] propagates a Gaussian packet through
//!   the full single-excitation Hamiltonian with a discretized Lorentzian
//!   bath and measures transmitted/reflected/retained probability directly.

pub mod modes;
pub mod pv;
pub mod wavepacket;

use thiserror::Error;

pub use modes::{discretize_modes, ModeDiscretization};
pub use pv::{compare_oracle, pv_quadrature_potential, CompareTolerances, OracleReport};
pub use wavepacket::{evolve_wavepacket, SimulationOutcome, WavepacketSpec};

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    /// `|E|` too close to the `E = 0` branch point of the potential.
    #[error("|E| = {0} is too close to the branch point at E = 0")]
    BranchPoint(f64),
    #[error("quadrature failed to converge: achieved error {achieved:e}, requested {requested:e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },
    #[error("invalid mode discretization: {0}")]
    InvalidDiscretization(String),
    #[error("invalid wavepacket: {0}")]
    InvalidPacket(String),
    /// Probability reached the lattice edge before `t_final`.
    #[error("lattice too small: {0}")]
    LatticeTooSmall(String),
    #[error("integrator failure: norm drift {0:e} exceeds 1e-8")]
    IntegratorFailure(f64),
    #[error("comparison grid is empty")]
    EmptyGrid,
    #[error("comparison grid point {0} violates |E| >= 1e-3")]
    GridTooCloseToBranchPoint(f64),
}
