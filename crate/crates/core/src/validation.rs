//! End-to-end validation runs: compare the closed forms against the
//! brute-force oracles for a configured parameter set.

use std::fmt::Write as _;

use thiserror::Error;

use crate::config::{OracleConfig, RunConfig, SweepAxisKind};
use crate::model::{dispersion, group_velocity, Momentum};
use crate::oracle::{
    compare_oracle, discretize_modes, evolve_wavepacket, CompareTolerances, ModeDiscretization,
    OracleError, WavepacketSpec,
};
use crate::potential::PotentialError;
use crate::scattering::{coefficients, linspace, Cavity, ScatteringError};

#[derive(Debug, Error)]
pub enum ValidationError {
    /// `validate` needs the `[oracle]` section to know what to run.
    #[error("the configuration has no [oracle] section")]
    MissingOracleSection,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// One named validation check with a human-readable summary.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl ValidationReport {
    fn push(&mut self, check: CheckResult) {
        self.passed = self.passed && check.passed;
        self.checks.push(check);
    }
}

/// Map the configured sweep range onto incident energies.
fn energy_grid(cfg: &RunConfig, points: usize) -> Vec<f64> {
    let raw = linspace(cfg.sweep.start, cfg.sweep.stop, points);
    match cfg.sweep.axis {
        SweepAxisKind::Energy => raw,
        SweepAxisKind::Detuning => {
            let wc = cfg.cavity.omega_c();
            raw.into_iter().map(|d| wc + d).collect()
        }
        SweepAxisKind::Momentum => raw
            .into_iter()
            .map(|k| dispersion(Momentum(k), &cfg.waveguide).0)
            .collect(),
    }
}

/// Run the oracle checks requested by the configuration.
///
/// Always runs the principal-value quadrature comparison when the cavity is
/// Lorentzian; runs the wavepacket comparison when an `[oracle.packet]`
/// table is present (either cavity variant).
pub fn run_validation(cfg: &RunConfig) -> Result<ValidationReport, ValidationError> {
    let oracle: &OracleConfig = cfg
        .oracle
        .as_ref()
        .ok_or(ValidationError::MissingOracleSection)?;
    let mut report = ValidationReport {
        checks: Vec::new(),
        passed: true,
    };

    if let Cavity::Lorentzian(cav) = &cfg.cavity {
        let grid: Vec<f64> = energy_grid(cfg, oracle.grid_points)
            .into_iter()
            .filter(|e| e.abs() >= 1e-3)
            .collect();
        let tol = CompareTolerances {
            relative: oracle.tolerance,
            quadrature: oracle.quadrature_tol,
            ..CompareTolerances::default()
        };
        let outcome = compare_oracle(&grid, cav, &tol)?;
        let mut detail = String::new();
        write!(
            detail,
            "max relative deviation {:.3e} (abs {:.3e}) at E = {:.6}, {} grid points, tol {:.1e}",
            outcome.max_relative,
            outcome.max_absolute,
            outcome.worst_energy,
            grid.len(),
            oracle.tolerance
        )
        .unwrap();
        report.push(CheckResult {
            name: "pv-quadrature".into(),
            passed: outcome.passed,
            detail,
        });
    }

    if let Some(p) = &oracle.packet {
        let packet = WavepacketSpec::new(p.center_momentum, p.width_sites, p.center_site)?;
        let modes = match &cfg.cavity {
            Cavity::Lorentzian(cav) => {
                let omega_max = oracle
                    .omega_max
                    .unwrap_or(cav.omega_c + 50.0 * cav.gamma.max(1.0));
                discretize_modes(cav, oracle.mode_count, omega_max)?
            }
            Cavity::Perfect(cav) => ModeDiscretization::single(cav.omega_c, cav.eta)?,
        };
        let outcome = evolve_wavepacket(
            &cfg.waveguide,
            &modes,
            &packet,
            oracle.lattice_sites,
            oracle.time_step,
            oracle.t_final,
        )?;

        let k0 = packet.center_momentum;
        let e0 = dispersion(k0, &cfg.waveguide);
        let v = cfg.cavity.potential(e0)?;
        let analytic = coefficients(k0, &v, &cfg.waveguide)?;
        let dt_dev = (outcome.transmitted - analytic.big_t).abs();
        let dr_dev = (outcome.reflected - analytic.big_r).abs();
        let passed = dt_dev <= oracle.wavepacket_tol && dr_dev <= oracle.wavepacket_tol;
        let mut detail = String::new();
        write!(
            detail,
            "T = {:.6} vs {:.6}, R = {:.6} vs {:.6}, retained {:.6}, norm drift {:.1e}, v_g = {:.3}",
            outcome.transmitted,
            analytic.big_t,
            outcome.reflected,
            analytic.big_r,
            outcome.retained,
            outcome.norm_error,
            group_velocity(k0, &cfg.waveguide)
        )
        .unwrap();
        report.push(CheckResult {
            name: "wavepacket".into(),
            passed,
            detail,
        });
    }

    if report.checks.is_empty() {
        report.push(CheckResult {
            name: "noop".into(),
            passed: false,
            detail: "no applicable checks: perfect cavity without an [oracle.packet] table".into(),
        });
    }
    Ok(report)
}

/// Check whether a momentum grid point lies strictly inside the band, where
/// the wavepacket picture applies.
pub fn is_propagating(k: f64) -> bool {
    k > 0.0 && k < std::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn lorentzian_cfg(extra: &str) -> RunConfig {
        let text = format!(
            r#"
[waveguide]
omega = 10.0
hopping = 4.0

[cavity.lorentzian]
omega_c = 10.0
lambda = 8.0
gamma = 1.0

[sweep]
axis = "momentum"
start = 0.4
stop = 2.7
points = 101

[output]
format = "csv"
path = "out.csv"

{extra}
"#
        );
        parse_config(&text).unwrap()
    }

    #[test]
    fn missing_oracle_section_is_an_error() {
        let cfg = lorentzian_cfg("");
        assert!(matches!(
            run_validation(&cfg),
            Err(ValidationError::MissingOracleSection)
        ));
    }

    #[test]
    fn quadrature_check_passes_for_default_tolerances() {
        let cfg = lorentzian_cfg("[oracle]\ngrid_points = 25\n");
        let report = run_validation(&cfg).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].name, "pv-quadrature");
        assert!(report.passed, "detail: {}", report.checks[0].detail);
    }

    #[test]
    fn wavepacket_check_runs_when_packet_given() {
        let cfg = lorentzian_cfg(
            "[oracle]\ngrid_points = 10\nmode_count = 1000\nomega_max = 60.0\nlattice_sites = 640\nt_final = 40.0\n\n[oracle.packet]\ncenter_momentum = 1.5707963267948966\nwidth_sites = 15.0\ncenter_site = -130\n",
        );
        let report = run_validation(&cfg).unwrap();
        assert_eq!(report.checks.len(), 2);
        assert!(report.passed, "checks: {:?}", report.checks);
    }

    #[test]
    fn energy_grid_tracks_axis() {
        let mut cfg = lorentzian_cfg("");
        cfg.sweep.axis = SweepAxisKind::Detuning;
        cfg.sweep.start = -2.0;
        cfg.sweep.stop = 2.0;
        let grid = energy_grid(&cfg, 5);
        assert_eq!(grid, vec![8.0, 9.0, 10.0, 11.0, 12.0]);
    }
}
