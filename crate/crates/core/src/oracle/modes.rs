//! Discretization of the Lorentzian mode continuum into a finite set of
//! bath modes `(ω_q, g_q)` with `g_q² = J(ω_q) Δω` on a uniform midpoint
//! grid over `(0, ω_max]`.

use super::OracleError;
use crate::potential::{spectral_density, spectral_density_integral, LorentzianCavityParams};

/// Finite stand-in for the imperfect cavity's mode continuum.
#[derive(Debug, Clone)]
pub struct ModeDiscretization {
    frequencies: Vec<f64>,
    couplings: Vec<f64>,
}

impl ModeDiscretization {
    /// Build from explicit mode lists. Frequencies must be strictly
    /// increasing and positive, couplings non-negative and of equal length.
    pub fn new(frequencies: Vec<f64>, couplings: Vec<f64>) -> Result<Self, OracleError> {
        if frequencies.len() != couplings.len() {
            return Err(OracleError::InvalidDiscretization(
                "frequencies and couplings differ in length".into(),
            ));
        }
        if frequencies.is_empty() {
            return Err(OracleError::InvalidDiscretization("no modes".into()));
        }
        if frequencies[0] <= 0.0 || frequencies.windows(2).any(|w| w[1] <= w[0]) {
            return Err(OracleError::InvalidDiscretization(
                "frequencies must be positive and strictly increasing".into(),
            ));
        }
        if couplings.iter().any(|&g| !(g >= 0.0)) {
            return Err(OracleError::InvalidDiscretization(
                "couplings must be non-negative".into(),
            ));
        }
        Ok(Self {
            frequencies,
            couplings,
        })
    }

    /// A single mode: the perfect cavity as a degenerate discretization.
    pub fn single(omega: f64, coupling: f64) -> Result<Self, OracleError> {
        Self::new(vec![omega], vec![coupling])
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// `Σ_q g_q²`.
    pub fn total_coupling_sq(&self) -> f64 {
        self.couplings.iter().map(|g| g * g).sum()
    }
}

/// Uniform midpoint discretization: `ω_q = (q + ½)Δω`, `g_q = √(J(ω_q)Δω)`,
/// `Δω = ω_max / count`. The sum rule `Σ g_q² ≈ ∫₀^{ω_max} J dω` is enforced
/// to 1%; failure indicates the grid does not resolve the Lorentzian.
pub fn discretize_modes(
    cav: &LorentzianCavityParams,
    count: usize,
    omega_max: f64,
) -> Result<ModeDiscretization, OracleError> {
    if count < 2 {
        return Err(OracleError::InvalidDiscretization(format!(
            "need at least 2 modes, got {count}"
        )));
    }
    if !(omega_max > cav.omega_c + 10.0 * cav.gamma) {
        return Err(OracleError::InvalidDiscretization(format!(
            "omega_max = {omega_max} must exceed omega_c + 10 gamma = {}",
            cav.omega_c + 10.0 * cav.gamma
        )));
    }
    let dw = omega_max / count as f64;
    let mut frequencies = Vec::with_capacity(count);
    let mut couplings = Vec::with_capacity(count);
    for q in 0..count {
        let w = (q as f64 + 0.5) * dw;
        frequencies.push(w);
        couplings.push((spectral_density(w, cav) * dw).sqrt());
    }
    let modes = ModeDiscretization::new(frequencies, couplings)?;
    let analytic = spectral_density_integral(0.0, omega_max, cav);
    let sum = modes.total_coupling_sq();
    let rel = ((sum - analytic) / analytic).abs();
    if rel > 0.01 {
        return Err(OracleError::InvalidDiscretization(format!(
            "sum rule violated: sum g^2 = {sum:.6e} vs analytic {analytic:.6e} ({:.2}% off); \
             increase the mode count until the grid resolves gamma",
            100.0 * rel
        )));
    }
    Ok(modes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lor(omega_c: f64, lambda: f64, gamma: f64) -> LorentzianCavityParams {
        LorentzianCavityParams::new(omega_c, lambda, gamma).unwrap()
    }

    #[test]
    fn sum_rule_holds_for_resolved_grid() {
        let cav = lor(10.0, 8.0, 1.0);
        let modes = discretize_modes(&cav, 2000, 10.0 + 50.0).unwrap();
        let analytic = spectral_density_integral(0.0, 60.0, &cav);
        assert_relative_eq!(modes.total_coupling_sq(), analytic, max_relative = 0.01);
    }

    #[test]
    fn couplings_reproduce_spectral_density_at_midpoints() {
        let cav = lor(10.0, 8.0, 1.0);
        let modes = discretize_modes(&cav, 500, 60.0).unwrap();
        let dw = 60.0 / 500.0;
        for (w, g) in modes.frequencies().iter().zip(modes.couplings()) {
            assert_relative_eq!(g * g / dw, spectral_density(*w, &cav), max_relative = 1e-12);
        }
    }

    #[test]
    fn narrow_gamma_total_coupling_approaches_single_mode_limit() {
        // gamma -> 0 at fixed lambda*gamma: the discretized bath carries
        // total squared coupling lambda*gamma/2, the single-mode coupling of
        // the equivalent perfect cavity.
        let gamma = 0.01;
        let lambda = 2.0; // lambda * gamma = 0.02 fixed
        let cav = lor(10.0, lambda, gamma);
        // Delta-omega must resolve gamma, so scale the count accordingly.
        let modes = discretize_modes(&cav, 40_000, 10.0 + 50.0 * gamma).unwrap();
        assert_relative_eq!(
            modes.total_coupling_sq(),
            lambda * gamma / 2.0,
            max_relative = 0.02
        );
    }

    #[test]
    fn spectral_sum_rule_full_line() {
        // Quadrature-free version: the analytic integral over (0, inf)
        // equals (lambda gamma / 2pi)(pi/2 + arctan(omega_c/gamma)).
        let cav = lor(10.0, 20.0, 0.5);
        let full = spectral_density_integral(0.0, f64::INFINITY, &cav);
        let expected = cav.lambda * cav.gamma / (2.0 * std::f64::consts::PI)
            * (std::f64::consts::FRAC_PI_2 + (cav.omega_c / cav.gamma).atan());
        assert_relative_eq!(full, expected, max_relative = 1e-12);
        // gamma << omega_c: approaches lambda*gamma/2 (here to about 2%).
        assert_relative_eq!(full, cav.lambda * cav.gamma / 2.0, max_relative = 0.02);
    }

    #[test]
    fn invalid_inputs_rejected() {
        let cav = lor(10.0, 8.0, 1.0);
        assert!(discretize_modes(&cav, 1, 60.0).is_err());
        assert!(discretize_modes(&cav, 2000, 15.0).is_err());
        assert!(ModeDiscretization::new(vec![1.0, 1.0], vec![0.1, 0.1]).is_err());
        assert!(ModeDiscretization::new(vec![-1.0, 2.0], vec![0.1, 0.1]).is_err());
        assert!(ModeDiscretization::new(vec![1.0], vec![0.1, 0.2]).is_err());
    }

    #[test]
    fn unresolved_gamma_fails_sum_rule() {
        // gamma far below the grid spacing: midpoint rule cannot capture the
        // peak, and the constructor reports it instead of silently passing.
        let cav = lor(10.0, 800.0, 1e-4);
        assert!(matches!(
            discretize_modes(&cav, 100, 20.0),
            Err(OracleError::InvalidDiscretization(_))
        ));
    }
}
