//! Cauchy principal-value quadrature of the effective-potential integral
//! `V(E) = ∫₀^∞ J(ω)/(E − ω) dω`.
//!
//! For `E > 0` the pole at `ω = E` is removed by subtraction:
//! `∫ [J(ω) − J(E)]/(E − ω) dω + J(E)·PV∫ dω/(E − ω)`, the second piece
//! analytic (`ln(E/(W − E))` on `(0, W)`). The `(W, ∞)` tail is integrated
//! after the substitution `u = 1/ω`, so nothing here relies on the closed
//! form under test. The imaginary part is `−π J(E)` for `E > 0`.

use std::f64::consts::PI;

use super::OracleError;
use crate::model::Energy;
use crate::potential::{
    potential_imperfect, spectral_density, ComplexPotential, LorentzianCavityParams,
};

/// Adaptive Simpson quadrature with Richardson extrapolation.
fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, OracleError> {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64, OracleError> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || (b - a) < 1e-14 * (b.abs() + a.abs() + 1.0) {
            if depth == 0 && delta.abs() > 15.0 * tol {
                return Err(OracleError::ToleranceNotMet {
                    achieved: delta.abs() / 15.0,
                    requested: tol,
                });
            }
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(OracleError::ToleranceNotMet {
                achieved: delta.abs() / 15.0,
                requested: tol,
            });
        }
        let l = recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)?;
        let r = recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }

    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, tol, 52)
}

/// Integrate `f` over `[a, b]`, splitting at the interior breakpoints.
fn panel_integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<f64, OracleError> {
    let mut edges: Vec<f64> = vec![a, b];
    for &p in breakpoints {
        if p > a && p < b {
            edges.push(p);
        }
    }
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    edges.dedup();
    let per_panel = tol / edges.len() as f64;
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += adaptive_simpson(f, w[0], w[1], per_panel)?;
    }
    Ok(total)
}

/// Brute-force evaluation of the effective potential by principal-value
/// quadrature, with declared absolute error ≤ `tol`.
pub fn pv_quadrature_potential(
    e: Energy,
    cav: &LorentzianCavityParams,
    tol: f64,
) -> Result<ComplexPotential, OracleError> {
    let e = e.0;
    if e.abs() <= 1e-6 {
        return Err(OracleError::BranchPoint(e.abs()));
    }
    let wc = cav.omega_c;
    let gamma = cav.gamma;
    // Upper cutoff: well past the Lorentzian tail and the pole.
    let cutoff = (wc + 50.0 * gamma).max(2.0 * e.abs() + 10.0 * gamma + 10.0);
    let j = |w: f64| spectral_density(w, cav);
    let breakpoints = [wc - gamma, wc, wc + gamma, e];

    let re = if e > 0.0 {
        let je = j(e);
        // d/dω J at the pole, for the removable singularity of the
        // subtracted integrand.
        let d = (wc - e) * (wc - e) + gamma * gamma;
        let jprime = cav.lambda * gamma * gamma / PI * (wc - e) / (d * d);
        let scale = e.abs().max(1.0);
        let subtracted = |w: f64| {
            if (e - w).abs() < 1e-9 * scale {
                -jprime
            } else {
                (j(w) - je) / (e - w)
            }
        };
        let regular = panel_integrate(&subtracted, 0.0, cutoff, &breakpoints, tol / 3.0)?;
        let pv_core = je * (e / (cutoff - e)).ln();
        let tail = tail_integral(e, cav, cutoff, tol / 3.0)?;
        regular + pv_core + tail
    } else {
        let plain = |w: f64| j(w) / (e - w);
        let regular = panel_integrate(&plain, 0.0, cutoff, &breakpoints, tol / 2.0)?;
        let tail = tail_integral(e, cav, cutoff, tol / 2.0)?;
        regular + tail
    };

    let im = if e > 0.0 { -PI * j(e) } else { 0.0 };
    Ok(ComplexPotential { re, im })
}

/// `∫_W^∞ J(ω)/(E − ω) dω` via `u = 1/ω`, an ordinary integral on
/// `(0, 1/W]`.
fn tail_integral(
    e: f64,
    cav: &LorentzianCavityParams,
    cutoff: f64,
    tol: f64,
) -> Result<f64, OracleError> {
    let f = |u: f64| {
        if u == 0.0 {
            0.0
        } else {
            let w = 1.0 / u;
            spectral_density(w, cav) / ((e - w) * u * u)
        }
    };
    adaptive_simpson(&f, 0.0, 1.0 / cutoff, tol)
}

#[derive(Debug, Clone, Copy)]
pub struct CompareTolerances {
    /// Relative threshold where a component is resolvably nonzero.
    pub relative: f64,
    /// Absolute threshold where a component vanishes.
    pub absolute: f64,
    /// Absolute tolerance handed to the quadrature.
    pub quadrature: f64,
}

impl Default for CompareTolerances {
    fn default() -> Self {
        Self {
            relative: 1e-8,
            absolute: 1e-10,
            quadrature: 1e-11,
        }
    }
}

/// Maximum deviations between the closed-form potential and the quadrature
/// oracle over an energy grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub max_relative: f64,
    pub max_absolute: f64,
    pub worst_energy: f64,
    pub passed: bool,
}

/// Compare `potential_imperfect` against [`pv_quadrature_potential`] over a
/// grid. A component with `|oracle value| > absolute-threshold` is scored
/// relatively, otherwise absolutely.
pub fn compare_oracle(
    grid: &[f64],
    cav: &LorentzianCavityParams,
    tol: &CompareTolerances,
) -> Result<OracleReport, OracleError> {
    if grid.is_empty() {
        return Err(OracleError::EmptyGrid);
    }
    if let Some(&bad) = grid.iter().find(|e| e.abs() < 1e-3) {
        return Err(OracleError::GridTooCloseToBranchPoint(bad));
    }
    let mut max_relative: f64 = 0.0;
    let mut max_absolute: f64 = 0.0;
    let mut worst_energy = grid[0];
    for &e in grid {
        let closed = potential_imperfect(Energy(e), cav)
            .expect("grid excludes the branch point");
        let oracle = pv_quadrature_potential(Energy(e), cav, tol.quadrature)?;
        for (c, o) in [(closed.re, oracle.re), (closed.im, oracle.im)] {
            let diff = (c - o).abs();
            if o.abs() > tol.absolute {
                let rel = diff / o.abs();
                if rel > max_relative {
                    max_relative = rel;
                    worst_energy = e;
                }
            } else if diff > max_absolute {
                max_absolute = diff;
                worst_energy = e;
            }
        }
    }
    Ok(OracleReport {
        max_relative,
        max_absolute,
        worst_energy,
        passed: max_relative <= tol.relative && max_absolute <= tol.absolute,
    })
}
