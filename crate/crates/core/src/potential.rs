//! Effective scattering potential at site 0 for the perfect and imperfect
//! cavities.
//!
//! Eliminating the cavity modes from the single-excitation eigenproblem
//! leaves an energy-dependent on-site potential
//! `V(E) = Σ_q g_q²/(E − ω_q) = ∫₀^∞ J(ω)/(E − ω) dω`.
//! For the Lorentzian spectral density the integral has a closed form. We do
//! not transcribe the literature log-expression verbatim (its branch
//! conventions are unstated); instead `V` is assembled as the analytically
//! reduced principal-value real part plus `i` times the piecewise imaginary
//! part, and the result is validated against the quadrature oracle in
//! [`crate::oracle`].

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::model::Energy;

/// Relative tolerance for detecting exact resonance of the perfect cavity.
const RESONANCE_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum PotentialError {
    /// The imperfect-cavity potential is discontinuous across `E = 0`; we
    /// refuse to evaluate at the branch point so the caller picks a side.
    #[error("effective potential is discontinuous at E = 0; evaluate at E = ±ε instead")]
    BranchPoint,
    #[error("invalid cavity parameters: {0}")]
    InvalidParams(String),
}

/// Perfect single-mode cavity: frequency `ω_c`, coupling `η` to site 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerfectCavityParams {
    pub omega_c: f64,
    pub eta: f64,
}

impl PerfectCavityParams {
    pub fn new(omega_c: f64, eta: f64) -> Result<Self, PotentialError> {
        if !(omega_c > 0.0) || !omega_c.is_finite() {
            return Err(PotentialError::InvalidParams(format!(
                "omega_c must be positive, got {omega_c}"
            )));
        }
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(PotentialError::InvalidParams(format!(
                "eta must be non-negative, got {eta}"
            )));
        }
        Ok(Self { omega_c, eta })
    }
}

/// Imperfect cavity: Lorentzian spectral density with central frequency
/// `ω_c`, coupling strength `λ` (peak value `λ/2π`) and width `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianCavityParams {
    pub omega_c: f64,
    pub lambda: f64,
    pub gamma: f64,
}

impl LorentzianCavityParams {
    pub fn new(omega_c: f64, lambda: f64, gamma: f64) -> Result<Self, PotentialError> {
        if !(omega_c > 0.0) || !omega_c.is_finite() {
            return Err(PotentialError::InvalidParams(format!(
                "omega_c must be positive, got {omega_c}"
            )));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(PotentialError::InvalidParams(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(PotentialError::InvalidParams(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        Ok(Self {
            omega_c,
            lambda,
            gamma,
        })
    }
}

/// Complex effective scattering potential at a given incident energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPotential {
    pub re: f64,
    pub im: f64,
}

/// Outcome of a potential evaluation: either a finite complex value or the
/// resonant indicator of the perfect cavity, where `|V| → ∞` and the photon
/// is totally reflected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CavityPotential {
    Finite(ComplexPotential),
    Resonant,
}

impl From<ComplexPotential> for CavityPotential {
    fn from(v: ComplexPotential) -> Self {
        CavityPotential::Finite(v)
    }
}

/// Lorentzian spectral density `J(ω) = (1/2π) λγ² / ((ω_c − ω)² + γ²)`.
pub fn spectral_density(omega: f64, cav: &LorentzianCavityParams) -> f64 {
    let d = cav.omega_c - omega;
    cav.lambda * cav.gamma * cav.gamma / (2.0 * PI * (d * d + cav.gamma * cav.gamma))
}

/// Analytic `∫_a^b J(ω) dω` for the Lorentzian spectral density.
pub fn spectral_density_integral(a: f64, b: f64, cav: &LorentzianCavityParams) -> f64 {
    let atan = |x: f64| ((x - cav.omega_c) / cav.gamma).atan();
    cav.lambda * cav.gamma / (2.0 * PI) * (atan(b) - atan(a))
}

/// Perfect-cavity potential `V = η²/(E − ω_c)`, real. At exact resonance
/// (within `1e-12` relative) the resonant indicator is returned; downstream
/// scattering interprets it as total reflection.
pub fn potential_perfect(e: Energy, cav: &PerfectCavityParams) -> CavityPotential {
    let det = e.0 - cav.omega_c;
    if det.abs() <= RESONANCE_TOL * cav.omega_c.abs().max(1.0) {
        return CavityPotential::Resonant;
    }
    CavityPotential::Finite(ComplexPotential {
        re: cav.eta * cav.eta / det,
        im: 0.0,
    })
}

/// Closed-form imperfect-cavity potential.
///
/// Real part (principal value of the spectral integral, reduced by partial
/// fractions):
/// `Re V = λγ²/(2πD) · [ ln(|E|/√(ω_c²+γ²)) + ((E−ω_c)/γ)(π/2 + arctan(ω_c/γ)) ]`
/// with `D = (E−ω_c)² + γ²`. Imaginary part: `−λγ²/(2D)` for `E > 0`, zero
/// for `E < 0`.
pub fn potential_imperfect(
    e: Energy,
    cav: &LorentzianCavityParams,
) -> Result<ComplexPotential, PotentialError> {
    if e.0 == 0.0 {
        return Err(PotentialError::BranchPoint);
    }
    let det = e.0 - cav.omega_c;
    let g2 = cav.gamma * cav.gamma;
    let d = det * det + g2;
    let coeff = cav.lambda * g2 / (2.0 * PI * d);
    let bracket = (e.0.abs() / (cav.omega_c * cav.omega_c + g2).sqrt()).ln()
        + det / cav.gamma * (FRAC_PI_2 + (cav.omega_c / cav.gamma).atan());
    let im = if e.0 > 0.0 {
        -cav.lambda * g2 / (2.0 * d)
    } else {
        0.0
    };
    Ok(ComplexPotential {
        re: coeff * bracket,
        im,
    })
}

/// Resonant simplification `V(E = ω_c) = (λ/2π)(ln(ω_c/√(ω_c²+γ²)) − iπ)`.
pub fn potential_resonant(cav: &LorentzianCavityParams) -> ComplexPotential {
    let mag = (cav.omega_c * cav.omega_c + cav.gamma * cav.gamma).sqrt();
    ComplexPotential {
        re: cav.lambda / (2.0 * PI) * (cav.omega_c / mag).ln(),
        im: -cav.lambda / 2.0,
    }
}
