//! Scattering amplitudes and coefficients from an effective potential, plus
//! grid sweeps.
//!
//! For a photon with momentum `k` hitting the on-site potential `V`,
//! `t = 2iJ sin k / (2iJ sin k − V)` and `r = V / (2iJ sin k − V)`, so
//! `t − r = 1` identically (the continuity condition at site 0). The
//! coefficients admit a second algebraic route,
//! `T = 4J² sin²k / (Re V² + (2J sin k − Im V)²)`, kept separate so tests can
//! cross-check the two.

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{
    dispersion, momentum_from_energy, Energy, ModelError, Momentum, WaveguideParams,
};
use crate::potential::{
    potential_imperfect, potential_perfect, CavityPotential, ComplexPotential,
    LorentzianCavityParams, PerfectCavityParams, PotentialError,
};

#[derive(Debug, Error)]
pub enum ScatteringError {
    /// `sin k = 0` and `V = 0`: a free band-edge mode, no scattering defined.
    #[error("sin k and V both vanish; no scattering problem is defined")]
    DegenerateInput,
    #[error("grid point {index} (value {value}) lies outside the band")]
    OutOfBand { index: usize, value: f64 },
    #[error("sweep grid is empty")]
    EmptyGrid,
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Either cavity variant, as attached to site 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cavity {
    Perfect(PerfectCavityParams),
    Lorentzian(LorentzianCavityParams),
}

impl Cavity {
    pub fn omega_c(&self) -> f64 {
        match self {
            Cavity::Perfect(p) => p.omega_c,
            Cavity::Lorentzian(l) => l.omega_c,
        }
    }

    /// Potential at the given energy. `E = 0` with the Lorentzian cavity is a
    /// branch point and errors out.
    pub fn potential(&self, e: Energy) -> Result<CavityPotential, PotentialError> {
        match self {
            Cavity::Perfect(p) => Ok(potential_perfect(e, p)),
            Cavity::Lorentzian(l) => Ok(potential_imperfect(e, l)?.into()),
        }
    }
}

/// Amplitudes and coefficients for one scattering event. `retained` is
/// `1 − T − R`, the probability the photon stays in the cavity modes.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringResult {
    pub t: Complex64,
    pub r: Complex64,
    pub big_t: f64,
    pub big_r: f64,
    pub retained: f64,
}

/// Transmission and reflection amplitudes `(t, r)`. The resonant indicator
/// maps to `(0, −1)`, the `|V| → ∞` limit of the formulas.
pub fn amplitudes(
    k: Momentum,
    v: &CavityPotential,
    wg: &WaveguideParams,
) -> Result<(Complex64, Complex64), ScatteringError> {
    let v = match v {
        CavityPotential::Resonant => {
            return Ok((Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)))
        }
        CavityPotential::Finite(v) => Complex64::new(v.re, v.im),
    };
    let flux = Complex64::new(0.0, 2.0 * wg.hopping * k.0.sin());
    let denom = flux - v;
    if denom.norm_sqr() == 0.0 {
        return Err(ScatteringError::DegenerateInput);
    }
    Ok((flux / denom, v / denom))
}

/// Coefficients via the amplitude route: `T = |t|²`, `R = |r|²`.
pub fn coefficients(
    k: Momentum,
    v: &CavityPotential,
    wg: &WaveguideParams,
) -> Result<ScatteringResult, ScatteringError> {
    let (t, r) = amplitudes(k, v, wg)?;
    let big_t = t.norm_sqr();
    let big_r = r.norm_sqr();
    Ok(ScatteringResult {
        t,
        r,
        big_t,
        big_r,
        retained: 1.0 - big_t - big_r,
    })
}

/// Coefficients via the closed algebraic route, independent of the complex
/// amplitudes. Used as the second leg of the two-route consistency checks.
pub fn coefficients_closed(k: Momentum, v: ComplexPotential, wg: &WaveguideParams) -> (f64, f64) {
    let s = 2.0 * wg.hopping * k.0.sin();
    let denom = v.re * v.re + (s - v.im) * (s - v.im);
    (s * s / denom, (v.re * v.re + v.im * v.im) / denom)
}

/// `T + R − 1 = 4J sin k · Im V / (Re V² + (2J sin k − Im V)²)`, evaluated
/// from that expression directly (not via the coefficients).
pub fn conservation_deficit(
    k: Momentum,
    v: &CavityPotential,
    wg: &WaveguideParams,
) -> Result<f64, ScatteringError> {
    let v = match v {
        CavityPotential::Resonant => return Ok(0.0),
        CavityPotential::Finite(v) => v,
    };
    let s = 2.0 * wg.hopping * k.0.sin();
    let denom = v.re * v.re + (s - v.im) * (s - v.im);
    if denom == 0.0 {
        return Err(ScatteringError::DegenerateInput);
    }
    Ok(2.0 * s * v.im / denom)
}

/// One row of a sweep table. Resonant points carry `re_v = ∞`.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub k: f64,
    pub energy: f64,
    pub re_v: f64,
    pub im_v: f64,
    pub big_t: f64,
    pub big_r: f64,
    pub sum: f64,
}

/// Sweep grid: raw momenta in `[0, π]` or raw energies within the band.
#[derive(Debug, Clone)]
pub enum Grid {
    Momentum(Vec<f64>),
    Energy(Vec<f64>),
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    /// Grid points landing exactly on `E = 0` are replaced by paired rows at
    /// `E = ±ε` so the discontinuity is never interpolated across.
    pub branch_epsilon: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            branch_epsilon: 1e-9,
        }
    }
}

/// Evaluate the scattering table over a grid. Rows are order-preserving; a
/// grid point at exactly `E = 0` expands into two rows at `E = ∓ε`.
pub fn sweep(
    grid: &Grid,
    cavity: &Cavity,
    wg: &WaveguideParams,
    opts: &SweepOptions,
) -> Result<Vec<SweepRow>, ScatteringError> {
    let n = match grid {
        Grid::Momentum(v) => v.len(),
        Grid::Energy(v) => v.len(),
    };
    if n == 0 {
        return Err(ScatteringError::EmptyGrid);
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let energy = match grid {
            Grid::Momentum(ks) => {
                let k = ks[i];
                if !(0.0..=std::f64::consts::PI).contains(&k) {
                    return Err(ScatteringError::OutOfBand { index: i, value: k });
                }
                dispersion(Momentum(k), wg).0
            }
            Grid::Energy(es) => {
                let e = es[i];
                momentum_from_energy(Energy(e), wg)
                    .map_err(|_| ScatteringError::OutOfBand { index: i, value: e })?;
                e
            }
        };
        // Snap floating-point residue at the branch point to exactly zero,
        // then split.
        let scale = wg.band_max().abs().max(wg.band_min().abs()).max(1.0);
        if energy.abs() <= 1e-13 * scale {
            let eps = opts.branch_epsilon;
            rows.push(eval_row(Energy(-eps), cavity, wg)?);
            rows.push(eval_row(Energy(eps), cavity, wg)?);
        } else {
            rows.push(eval_row(Energy(energy), cavity, wg)?);
        }
    }
    Ok(rows)
}

fn eval_row(e: Energy, cavity: &Cavity, wg: &WaveguideParams) -> Result<SweepRow, ScatteringError> {
    let k = momentum_from_energy(e, wg)?;
    let v = cavity.potential(e)?;
    let res = coefficients(k, &v, wg)?;
    let (re_v, im_v) = match v {
        CavityPotential::Resonant => (f64::INFINITY, 0.0),
        CavityPotential::Finite(v) => (v.re, v.im),
    };
    Ok(SweepRow {
        k: k.0,
        energy: e.0,
        re_v,
        im_v,
        big_t: res.big_t,
        big_r: res.big_r,
        sum: res.big_t + res.big_r,
    })
}

/// Uniform closed grid with `points` entries from `start` to `stop`.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    let step = (stop - start) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                // Land exactly on the endpoint; accumulated rounding can
                // otherwise overshoot a band edge by one ulp.
                stop
            } else {
                start + i as f64 * step
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn wg() -> WaveguideParams {
        WaveguideParams::new(10.0, 4.0).unwrap()
    }

    fn fin(re: f64, im: f64) -> CavityPotential {
        CavityPotential::Finite(ComplexPotential { re, im })
    }

    #[test]
    fn no_potential_full_transmission() {
        let (t, r) = amplitudes(Momentum(PI / 2.0), &fin(0.0, 0.0), &wg()).unwrap();
        assert_abs_diff_eq!(t.re, 1.0);
        assert_abs_diff_eq!(t.im, 0.0);
        assert_abs_diff_eq!(r.norm(), 0.0);
    }

    #[test]
    fn resonant_indicator_gives_total_reflection() {
        let (t, r) = amplitudes(Momentum(PI / 2.0), &CavityPotential::Resonant, &wg()).unwrap();
        assert_eq!(t, Complex64::new(0.0, 0.0));
        assert_eq!(r, Complex64::new(-1.0, 0.0));
        let res = coefficients(Momentum(PI / 2.0), &CavityPotential::Resonant, &wg()).unwrap();
        assert_eq!(res.big_t, 0.0);
        assert_eq!(res.big_r, 1.0);
        assert_eq!(res.retained, 0.0);
    }

    #[test]
    fn midband_resonant_imperfect_values() {
        // V at resonance for lambda = 8, gamma = 1 (frozen in potential tests).
        let v = fin(-0.006334577362725965, -4.0);
        let res = coefficients(Momentum(PI / 2.0), &v, &wg()).unwrap();
        assert_abs_diff_eq!(res.big_t, 0.4444443, epsilon = 1e-6);
        assert_abs_diff_eq!(res.big_r, 0.1111114, epsilon = 1e-6);
        let d = conservation_deficit(Momentum(PI / 2.0), &v, &wg()).unwrap();
        assert_abs_diff_eq!(d, -0.4444443, epsilon = 1e-6);
        assert_abs_diff_eq!(d, res.big_t + res.big_r - 1.0, epsilon = 1e-12);
    }

    #[test]
    fn small_momentum_limit_reflects() {
        let v = fin(0.3, 0.0);
        let (t, r) = amplitudes(Momentum(1e-9), &v, &wg()).unwrap();
        assert!(t.norm() < 1e-7);
        assert_abs_diff_eq!(r.re, -1.0, epsilon = 1e-7);
    }

    #[test]
    fn continuity_condition_holds() {
        for (re, im, k) in [(0.5, -0.2, 0.3), (-3.0, -5.0, 2.9), (0.0, -10.0, PI / 2.0)] {
            let (t, r) = amplitudes(Momentum(k), &fin(re, im), &wg()).unwrap();
            assert!((t - r - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn degenerate_input_rejected() {
        assert!(matches!(
            amplitudes(Momentum(0.0), &fin(0.0, 0.0), &wg()),
            Err(ScatteringError::DegenerateInput)
        ));
    }

    #[test]
    fn two_routes_agree() {
        for (re, im, k) in [(0.7, -1.3, 1.0), (-2.0, 0.0, 0.4), (5.0, -8.0, 3.0)] {
            let res = coefficients(Momentum(k), &fin(re, im), &wg()).unwrap();
            let (t2, r2) = coefficients_closed(Momentum(k), ComplexPotential { re, im }, &wg());
            assert_abs_diff_eq!(res.big_t, t2, epsilon = 1e-12);
            assert_abs_diff_eq!(res.big_r, r2, epsilon = 1e-12);
        }
    }

    #[test]
    fn hermitian_potential_conserves_current() {
        let res = coefficients(Momentum(1.1), &fin(2.5, 0.0), &wg()).unwrap();
        assert_abs_diff_eq!(res.big_t + res.big_r, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(res.retained, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            conservation_deficit(Momentum(1.1), &fin(2.5, 0.0), &wg()).unwrap(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn perfect_cavity_sweep_is_unitary() {
        let cavity = Cavity::Perfect(PerfectCavityParams::new(10.0, 0.1).unwrap());
        let grid = Grid::Momentum(linspace(0.0, PI, 1001));
        let rows = sweep(&grid, &cavity, &wg(), &SweepOptions::default()).unwrap();
        assert_eq!(rows.len(), 1001);
        for row in &rows {
            assert_abs_diff_eq!(row.sum, 1.0, epsilon = 1e-12);
        }
        // Resonant dip at k = pi/2.
        assert_eq!(rows[500].big_t, 0.0);
        assert_eq!(rows[500].big_r, 1.0);
    }

    #[test]
    fn imperfect_sweep_loses_probability_midband() {
        let cavity = Cavity::Lorentzian(LorentzianCavityParams::new(10.0, 8.0, 1.0).unwrap());
        let grid = Grid::Momentum(vec![PI / 2.0]);
        let rows = sweep(&grid, &cavity, &wg(), &SweepOptions::default()).unwrap();
        assert!(rows[0].sum < 1.0);
    }

    #[test]
    fn energy_sweep_splits_branch_point() {
        let wg = WaveguideParams::new(10.0, 10.0).unwrap();
        let cavity = Cavity::Lorentzian(LorentzianCavityParams::new(10.0, 20.0, 4.0).unwrap());
        let grid = Grid::Energy(linspace(-10.0, 30.0, 1001));
        let rows = sweep(&grid, &cavity, &wg, &SweepOptions::default()).unwrap();
        assert_eq!(rows.len(), 1002);
        let below: Vec<_> = rows.iter().filter(|r| r.energy < 0.0).collect();
        let jump_pair: Vec<_> = rows
            .iter()
            .filter(|r| r.energy.abs() <= 1e-9)
            .collect();
        assert_eq!(jump_pair.len(), 2);
        assert_eq!(jump_pair[0].energy, -1e-9);
        assert_eq!(jump_pair[1].energy, 1e-9);
        assert_eq!(jump_pair[0].im_v, 0.0);
        assert!(jump_pair[1].im_v < -1.0);
        for r in below {
            assert_abs_diff_eq!(r.sum, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn empty_grid_rejected() {
        let cavity = Cavity::Perfect(PerfectCavityParams::new(10.0, 0.1).unwrap());
        assert!(matches!(
            sweep(&Grid::Momentum(vec![]), &cavity, &wg(), &SweepOptions::default()),
            Err(ScatteringError::EmptyGrid)
        ));
    }

    #[test]
    fn out_of_band_grid_point_reports_index() {
        let cavity = Cavity::Perfect(PerfectCavityParams::new(10.0, 0.1).unwrap());
        let grid = Grid::Energy(vec![10.0, 19.0]);
        match sweep(&grid, &cavity, &wg(), &SweepOptions::default()) {
            Err(ScatteringError::OutOfBand { index, value }) => {
                assert_eq!(index, 1);
                assert_relative_eq!(value, 19.0);
            }
            other => panic!("expected OutOfBand, got {other:?}"),
        }
    }
}
