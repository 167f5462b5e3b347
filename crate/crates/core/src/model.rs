//! Waveguide parameters, the cosine dispersion relation and momentum/energy
//! conversions.
//!
//! All frequencies and energies are dimensionless (ℏ = 1); momenta are in
//! radians per lattice site.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    /// Energy outside the band `[Ω − 2J, Ω + 2J]`.
    #[error("energy {0} lies outside the band")]
    OutOfBand(f64),
    #[error("invalid waveguide parameters: {0}")]
    InvalidParams(String),
}

/// Bare resonator frequency `Ω` and intercavity hopping amplitude `J` of the
/// coupled-resonator waveguide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideParams {
    pub omega: f64,
    pub hopping: f64,
}

impl WaveguideParams {
    pub fn new(omega: f64, hopping: f64) -> Result<Self, ModelError> {
        if !omega.is_finite() {
            return Err(ModelError::InvalidParams(format!(
                "omega must be finite, got {omega}"
            )));
        }
        if !(hopping > 0.0) || !hopping.is_finite() {
            return Err(ModelError::InvalidParams(format!(
                "hopping must be positive and finite, got {hopping}"
            )));
        }
        Ok(Self { omega, hopping })
    }

    /// Band bottom `Ω − 2J`.
    pub fn band_min(&self) -> f64 {
        self.omega - 2.0 * self.hopping
    }

    /// Band top `Ω + 2J`.
    pub fn band_max(&self) -> f64 {
        self.omega + 2.0 * self.hopping
    }
}

/// Lattice momentum in radians per site. Propagating scattering states have
/// `0 < k < π`; the band edges `k = 0, π` are representable but carry zero
/// group velocity.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Momentum(pub f64);

/// Photon energy, same units as `Ω`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Energy(pub f64);

/// `E_k = Ω − 2J cos k`.
pub fn dispersion(k: Momentum, wg: &WaveguideParams) -> Energy {
    Energy(wg.omega - 2.0 * wg.hopping * k.0.cos())
}

/// Inverse of [`dispersion`]: `k = arccos((Ω − E)/2J) ∈ [0, π]`.
pub fn momentum_from_energy(e: Energy, wg: &WaveguideParams) -> Result<Momentum, ModelError> {
    let x = (wg.omega - e.0) / (2.0 * wg.hopping);
    if !x.is_finite() || x.abs() > 1.0 + 1e-12 {
        return Err(ModelError::OutOfBand(e.0));
    }
    Ok(Momentum(x.clamp(-1.0, 1.0).acos()))
}

/// Group velocity `dE/dk = 2J sin k`, non-negative on `[0, π]` and zero at
/// the band edges.
pub fn group_velocity(k: Momentum, wg: &WaveguideParams) -> f64 {
    2.0 * wg.hopping * k.0.sin()
}
