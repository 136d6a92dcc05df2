//! Parameter sweeps: the critical-field curve, threshold curves and a census
//! of root classes over a `(J, h)` grid.

use serde::Serialize;

use crate::domination::{Branch, FlatWindows};
use crate::error::{ensure_finite, Error, Result};
use crate::exec::Exec;
use crate::ising::{h_star, solve_fixed_points, t_star, ModelParams, RootClass};

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    ensure_finite("range start", lo)?;
    ensure_finite("range end", hi)?;
    if steps < 2 || lo > hi {
        return Err(Error::Domain(format!(
            "need lo <= hi and at least 2 steps, got [{lo}, {hi}] with {steps}"
        )));
    }
    let w = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { hi } else { lo + w * i as f64 })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HStarPoint {
    #[serde(rename = "J")]
    pub coupling: f64,
    pub h_star: f64,
    pub t_star: f64,
}

pub fn hstar_curve(d: u32, j_min: f64, j_max: f64, steps: usize, exec: Exec) -> Result<Vec<HStarPoint>> {
    let js = linspace(j_min, j_max, steps)?;
    exec.try_map(js.len(), |i| {
        let j = js[i];
        Ok(HStarPoint {
            coupling: j,
            h_star: h_star(d, j)?,
            t_star: t_star(d, j)?,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: f64,
    pub value: f64,
    pub branch: Branch,
}

fn threshold_curve(
    d: u32,
    j2: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
    exec: Exec,
    minus: bool,
) -> Result<Vec<CurvePoint>> {
    let w = FlatWindows::new(d, j2)?;
    let ts = linspace(t_min, t_max, steps)?;
    exec.try_map(ts.len(), |i| {
        let th = if minus { w.theta(ts[i]) } else { w.psi(ts[i]) }?;
        Ok(CurvePoint {
            t: ts[i],
            value: th.value,
            branch: th.branch,
        })
    })
}

/// `psi(J2, t)` sampled on `[t_min, t_max]`.
pub fn psi_curve(d: u32, j2: f64, t_min: f64, t_max: f64, steps: usize, exec: Exec) -> Result<Vec<CurvePoint>> {
    threshold_curve(d, j2, t_min, t_max, steps, exec, false)
}

/// `theta(J2, t)` sampled on `[t_min, t_max]`.
pub fn theta_curve(d: u32, j2: f64, t_min: f64, t_max: f64, steps: usize, exec: Exec) -> Result<Vec<CurvePoint>> {
    threshold_curve(d, j2, t_min, t_max, steps, exec, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CensusCell {
    #[serde(rename = "J")]
    pub coupling: f64,
    pub h: f64,
    pub class: RootClass,
}

/// Root class of the fixed-point equation at every grid point, `J` major.
pub fn root_census(d: u32, js: &[f64], hs: &[f64], exec: Exec) -> Result<Vec<CensusCell>> {
    let nh = hs.len();
    exec.try_map(js.len() * nh, |k| {
        let (j, h) = (js[k / nh], hs[k % nh]);
        Ok(CensusCell {
            coupling: j,
            h,
            class: solve_fixed_points(&ModelParams::new(d, j, h)?)?.class(),
        })
    })
}
