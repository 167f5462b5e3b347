//! Canned sweeps reproducing the reference parameter sets, one output table
//! per curve.

use std::fmt;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::config::OutputFormat;
use crate::model::WaveguideParams;
use crate::output::Table;
use crate::potential::{spectral_density, LorentzianCavityParams, PerfectCavityParams};
use crate::scattering::{linspace, sweep, Cavity, Grid, ScatteringError, SweepOptions};

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("unknown figure '{0}' (expected fig2a|fig2b|fig2c|fig3|fig4|fig5|fig6)")]
    UnknownName(String),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureName {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FromStr for FigureName {
    type Err = FigureError;

    fn from_str(s: &str) -> Result<Self, FigureError> {
        Ok(match s {
            "fig2a" => FigureName::Fig2a,
            "fig2b" => FigureName::Fig2b,
            "fig2c" => FigureName::Fig2c,
            "fig3" => FigureName::Fig3,
            "fig4" => FigureName::Fig4,
            "fig5" => FigureName::Fig5,
            "fig6" => FigureName::Fig6,
            other => return Err(FigureError::UnknownName(other.to_string())),
        })
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FigureName::Fig2a => "fig2a",
            FigureName::Fig2b => "fig2b",
            FigureName::Fig2c => "fig2c",
            FigureName::Fig3 => "fig3",
            FigureName::Fig4 => "fig4",
            FigureName::Fig5 => "fig5",
            FigureName::Fig6 => "fig6",
        };
        f.write_str(s)
    }
}

/// Trim a parameter value for use in a file name ("0.5", "20").
fn param_tag(x: f64) -> String {
    let s = format!("{x}");
    s.replace('-', "m")
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

/// Emit the data tables for one named figure into `outdir`. Returns the
/// paths written. `points` is the grid resolution per curve.
pub fn run_figure(
    name: FigureName,
    outdir: &Path,
    format: OutputFormat,
    points: usize,
    sig_digits: usize,
) -> Result<Vec<PathBuf>, FigureError> {
    std::fs::create_dir_all(outdir)?;
    let pi = std::f64::consts::PI;
    let wg4 = WaveguideParams::new(10.0, 4.0).expect("static params");
    let opts = SweepOptions::default();
    let mut written = Vec::new();

    let mut emit = |file_stem: String, table: Table| -> Result<(), FigureError> {
        let path = outdir.join(format!("{file_stem}.{}", extension(format)));
        let mut w = BufWriter::new(File::create(&path)?);
        table.write(&mut w, format, sig_digits)?;
        written.push(path);
        Ok(())
    };

    match name {
        FigureName::Fig2a => {
            let cavity = Cavity::Perfect(PerfectCavityParams::new(10.0, 0.1).expect("static"));
            let rows = sweep(&Grid::Momentum(linspace(0.0, pi, points)), &cavity, &wg4, &opts)?;
            emit(
                "fig2a".into(),
                Table::from_sweep(
                    vec!["perfect cavity: Omega = omega_c = 10, J = 4, eta = 0.1".into()],
                    &rows,
                ),
            )?;
        }
        FigureName::Fig2b => {
            // Weak-dissipation imperfect cavity equivalent to eta = 0.1,
            // using the consistent relation lambda = 2 eta^2 / gamma.
            let eta = 0.1;
            let gamma = 0.01;
            let lambda = 2.0 * eta * eta / gamma;
            let cavity = Cavity::Lorentzian(
                LorentzianCavityParams::new(10.0, lambda, gamma).expect("static"),
            );
            let rows = sweep(&Grid::Momentum(linspace(0.0, pi, points)), &cavity, &wg4, &opts)?;
            emit(
                "fig2b".into(),
                Table::from_sweep(
                    vec![
                        "imperfect cavity: Omega = omega_c = 10, J = 4, gamma = 0.01".into(),
                        format!(
                            "lambda = {lambda} derived from eta = {eta} via lambda = 2 eta^2 / gamma"
                        ),
                    ],
                    &rows,
                ),
            )?;
        }
        FigureName::Fig2c => {
            let cavity =
                Cavity::Lorentzian(LorentzianCavityParams::new(10.0, 8.0, 1.0).expect("static"));
            let rows = sweep(&Grid::Momentum(linspace(0.0, pi, points)), &cavity, &wg4, &opts)?;
            emit(
                "fig2c".into(),
                Table::from_sweep(
                    vec!["imperfect cavity: Omega = omega_c = 10, J = 4, lambda = 8, gamma = 1".into()],
                    &rows,
                ),
            )?;
        }
        FigureName::Fig3 => {
            for lambda in [0.5, 5.0, 10.0, 20.0] {
                let cavity = Cavity::Lorentzian(
                    LorentzianCavityParams::new(10.0, lambda, 0.5).expect("static"),
                );
                let rows = sweep(&Grid::Energy(linspace(2.0, 18.0, points)), &cavity, &wg4, &opts)?;
                emit(
                    format!("fig3_lambda{}", param_tag(lambda)),
                    Table::from_sweep(
                        vec![format!(
                            "imperfect cavity: Omega = omega_c = 10, J = 4, gamma = 0.5, lambda = {lambda}"
                        )],
                        &rows,
                    ),
                )?;
            }
        }
        FigureName::Fig4 => {
            for gamma in [0.1, 0.5, 1.0, 5.0] {
                let cavity = Cavity::Lorentzian(
                    LorentzianCavityParams::new(10.0, 20.0, gamma).expect("static"),
                );
                let rows = sweep(&Grid::Energy(linspace(2.0, 18.0, points)), &cavity, &wg4, &opts)?;
                emit(
                    format!("fig4_gamma{}", param_tag(gamma)),
                    Table::from_sweep(
                        vec![format!(
                            "imperfect cavity: Omega = omega_c = 10, J = 4, lambda = 20, gamma = {gamma}"
                        )],
                        &rows,
                    ),
                )?;
            }
        }
        FigureName::Fig5 => {
            for gamma in [0.1, 0.5, 1.0, 5.0] {
                let cav = LorentzianCavityParams::new(10.0, 20.0, gamma).expect("static");
                let grid = linspace(0.0, 20.0, points);
                let rows: Vec<Vec<f64>> = grid
                    .iter()
                    .map(|&w| vec![w, spectral_density(w, &cav)])
                    .collect();
                emit(
                    format!("fig5_gamma{}", param_tag(gamma)),
                    Table {
                        comments: vec![format!(
                            "spectral density: omega_c = 10, lambda = 20, gamma = {gamma}"
                        )],
                        columns: vec!["omega", "J_omega"],
                        rows,
                    },
                )?;
            }
        }
        FigureName::Fig6 => {
            let wg10 = WaveguideParams::new(10.0, 10.0).expect("static");
            let cavity =
                Cavity::Lorentzian(LorentzianCavityParams::new(10.0, 20.0, 4.0).expect("static"));
            let rows = sweep(
                &Grid::Energy(linspace(-10.0, 30.0, points)),
                &cavity,
                &wg10,
                &opts,
            )?;
            emit(
                "fig6".into(),
                Table::from_sweep(
                    vec![
                        "imperfect cavity: Omega = omega_c = 10, J = 10, lambda = 20, gamma = 4"
                            .into(),
                        "grid points at E = 0 are split into paired rows at E = -1e-9 and +1e-9"
                            .into(),
                    ],
                    &rows,
                ),
            )?;
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_names_round_trip() {
        for name in ["fig2a", "fig2b", "fig2c", "fig3", "fig4", "fig5", "fig6"] {
            assert_eq!(name.parse::<FigureName>().unwrap().to_string(), name);
        }
        assert!("fig7".parse::<FigureName>().is_err());
    }

    #[test]
    fn fig2a_sum_is_unity() {
        let dir = std::env::temp_dir().join("crw_scatter_fig2a_test");
        let paths = run_figure(FigureName::Fig2a, &dir, OutputFormat::Csv, 101, 17).unwrap();
        assert_eq!(paths.len(), 1);
        let text = std::fs::read_to_string(&paths[0]).unwrap();
        for line in text.lines().skip(2) {
            let sum: f64 = line.split(',').last().unwrap().parse().unwrap();
            assert!((sum - 1.0).abs() < 1e-12, "line: {line}");
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn fig5_peaks_at_lambda_over_two_pi() {
        let dir = std::env::temp_dir().join("crw_scatter_fig5_test");
        let paths = run_figure(FigureName::Fig5, &dir, OutputFormat::Csv, 201, 17).unwrap();
        assert_eq!(paths.len(), 4);
        let peak = 20.0 / (2.0 * std::f64::consts::PI);
        for p in &paths {
            let text = std::fs::read_to_string(p).unwrap();
            let max: f64 = text
                .lines()
                .skip(2)
                .map(|l| l.split(',').last().unwrap().parse::<f64>().unwrap())
                .fold(0.0, f64::max)
                ;
            assert!((max - peak).abs() < 1e-9, "peak {max} in {p:?}");
        }
        std::fs::remove_dir_all(&dir).ok();
    }
}
