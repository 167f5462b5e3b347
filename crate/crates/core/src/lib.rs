//! Single-photon transport in a 1D coupled-resonator waveguide controlled by
//! a cavity attached to site 0.
//!
//! The waveguide is a tight-binding chain with dispersion `E_k = Ω − 2J cos k`.
//! The cavity is either a perfect single mode (frequency `ω_c`, coupling `η`)
//! or an imperfect cavity whose mode continuum follows a Lorentzian spectral
//! density (peak `λ/2π`, width `γ`). Eliminating the cavity yields a complex
//! effective on-site potential `V(E_k)`; its negative imaginary part encodes
//! the probability that the photon is retained by the cavity modes, so
//! `T + R < 1` is possible even though every Hamiltonian here is Hermitian.
//!
//! The [`oracle`] module carries two independent brute-force validators: a
//! Cauchy principal-value quadrature of the potential integral and a
//! time-domain wavepacket simulation of the full single-excitation
//! Hamiltonian.

pub mod config;
pub mod figures;
pub mod model;
pub mod oracle;
pub mod output;
pub mod potential;
pub mod scattering;
pub mod validation;
