//! Run configuration: a TOML document with `[waveguide]`, `[cavity.*]`,
//! `[sweep]`, `[output]` and an optional `[oracle]` section. See the README
//! for the full grammar.

use serde::Deserialize;
use thiserror::Error;

use crate::model::WaveguideParams;
use crate::potential::{LorentzianCavityParams, PerfectCavityParams};
use crate::scattering::Cavity;

#[derive(Debug, Error)]
pub enum ConfigError {
    /// Syntax or schema error; the message carries the offending key and
    /// line/column as reported by the TOML parser.
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config key '{key}': {reason}")]
    Invalid { key: String, reason: String },
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    waveguide: RawWaveguide,
    cavity: RawCavity,
    sweep: RawSweep,
    output: RawOutput,
    oracle: Option<RawOracle>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWaveguide {
    omega: f64,
    hopping: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum RawCavity {
    Perfect { omega_c: f64, eta: f64 },
    Lorentzian { omega_c: f64, lambda: f64, gamma: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    axis: String,
    start: f64,
    stop: f64,
    points: usize,
    epsilon: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: String,
    path: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOracle {
    quadrature_tol: Option<f64>,
    tolerance: Option<f64>,
    grid_points: Option<usize>,
    mode_count: Option<usize>,
    omega_max: Option<f64>,
    lattice_sites: Option<usize>,
    time_step: Option<f64>,
    t_final: Option<f64>,
    wavepacket_tol: Option<f64>,
    packet: Option<RawPacket>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPacket {
    center_momentum: f64,
    width_sites: f64,
    center_site: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxisKind {
    Momentum,
    Energy,
    Detuning,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub axis: SweepAxisKind,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct OutputConfig {
    pub format: OutputFormat,
    pub path: String,
}

#[derive(Debug, Clone, Copy)]
pub struct PacketConfig {
    pub center_momentum: f64,
    pub width_sites: f64,
    pub center_site: i64,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub quadrature_tol: f64,
    pub tolerance: f64,
    pub grid_points: usize,
    pub mode_count: usize,
    pub omega_max: Option<f64>,
    pub lattice_sites: usize,
    pub time_step: f64,
    pub t_final: f64,
    pub wavepacket_tol: f64,
    pub packet: Option<PacketConfig>,
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub waveguide: WaveguideParams,
    pub cavity: Cavity,
    pub sweep: SweepConfig,
    pub output: OutputConfig,
    pub oracle: Option<OracleConfig>,
}

/// Parse and validate a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;

    let waveguide = WaveguideParams::new(raw.waveguide.omega, raw.waveguide.hopping)
        .map_err(|e| invalid("waveguide", e.to_string()))?;

    let cavity = match raw.cavity {
        RawCavity::Perfect { omega_c, eta } => Cavity::Perfect(
            PerfectCavityParams::new(omega_c, eta)
                .map_err(|e| invalid("cavity.perfect", e.to_string()))?,
        ),
        RawCavity::Lorentzian {
            omega_c,
            lambda,
            gamma,
        } => Cavity::Lorentzian(
            LorentzianCavityParams::new(omega_c, lambda, gamma)
                .map_err(|e| invalid("cavity.lorentzian", e.to_string()))?,
        ),
    };

    let axis = match raw.sweep.axis.as_str() {
        "momentum" => SweepAxisKind::Momentum,
        "energy" => SweepAxisKind::Energy,
        "detuning" => SweepAxisKind::Detuning,
        other => {
            return Err(invalid(
                "sweep.axis",
                format!("expected momentum | energy | detuning, got '{other}'"),
            ))
        }
    };
    if raw.sweep.points < 2 {
        return Err(invalid("sweep.points", "need at least 2 grid points"));
    }
    if !(raw.sweep.start < raw.sweep.stop) {
        return Err(invalid("sweep", "start must be less than stop"));
    }
    let epsilon = raw.sweep.epsilon.unwrap_or(1e-9);
    if !(epsilon > 0.0) {
        return Err(invalid("sweep.epsilon", "must be positive"));
    }

    // Range must stay within the band for the given waveguide.
    let (lo, hi) = (raw.sweep.start, raw.sweep.stop);
    match axis {
        SweepAxisKind::Momentum => {
            if lo < 0.0 || hi > std::f64::consts::PI {
                return Err(invalid("sweep", "momentum range must lie within [0, pi]"));
            }
        }
        SweepAxisKind::Energy => {
            if lo < waveguide.band_min() - 1e-12 || hi > waveguide.band_max() + 1e-12 {
                return Err(invalid(
                    "sweep",
                    format!(
                        "energy range must lie within the band [{}, {}]",
                        waveguide.band_min(),
                        waveguide.band_max()
                    ),
                ));
            }
        }
        SweepAxisKind::Detuning => {
            let wc = cavity.omega_c();
            if wc + lo < waveguide.band_min() - 1e-12 || wc + hi > waveguide.band_max() + 1e-12 {
                return Err(invalid(
                    "sweep",
                    "detuning range pushes the energy outside the band",
                ));
            }
        }
    }

    let format = match raw.output.format.as_str() {
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => {
            return Err(invalid(
                "output.format",
                format!("expected csv | json, got '{other}'"),
            ))
        }
    };

    let oracle = match raw.oracle {
        None => None,
        Some(o) => {
            let cfg = OracleConfig {
                quadrature_tol: o.quadrature_tol.unwrap_or(1e-11),
                tolerance: o.tolerance.unwrap_or(1e-8),
                grid_points: o.grid_points.unwrap_or(200),
                mode_count: o.mode_count.unwrap_or(2000),
                omega_max: o.omega_max,
                lattice_sites: o.lattice_sites.unwrap_or(768),
                time_step: o.time_step.unwrap_or(2.0),
                t_final: o.t_final.unwrap_or(40.0),
                wavepacket_tol: o.wavepacket_tol.unwrap_or(0.02),
                packet: o.packet.map(|p| PacketConfig {
                    center_momentum: p.center_momentum,
                    width_sites: p.width_sites,
                    center_site: p.center_site,
                }),
            };
            if !(cfg.quadrature_tol > 0.0) {
                return Err(invalid("oracle.quadrature_tol", "must be positive"));
            }
            if !(cfg.tolerance > 0.0) {
                return Err(invalid("oracle.tolerance", "must be positive"));
            }
            if cfg.grid_points == 0 {
                return Err(invalid("oracle.grid_points", "must be positive"));
            }
            Some(cfg)
        }
    };

    Ok(RunConfig {
        waveguide,
        cavity,
        sweep: SweepConfig {
            axis,
            start: raw.sweep.start,
            stop: raw.sweep.stop,
            points: raw.sweep.points,
            epsilon,
        },
        output: OutputConfig {
            format,
            path: raw.output.path,
        },
        oracle,
    })
}
