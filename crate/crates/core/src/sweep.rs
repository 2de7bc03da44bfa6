//! Steady-state and cooling-rate maps over one or two parameters.

use rayon::prelude::*;

use crate::config::{RunConfig, SweepAxis};
use crate::moments::{cooling_rate, steady_state_closed};
use crate::Result;

/// Steady state and rate at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub m_ss: f64,
    pub n_total_ss: f64,
    pub gamma_eff: f64,
}

impl PointValues {
    pub fn is_stable(&self) -> bool {
        self.gamma_eff > 0.0
    }
}

/// Evaluates the closed-form steady state and cooling rate of `config`.
pub fn evaluate_point(config: &RunConfig) -> Result<PointValues> {
    let params = config.effective_params()?;
    let ss = steady_state_closed(&params)?;
    let fit = cooling_rate(&params, 0.0)?;
    Ok(PointValues {
        m_ss: ss.m_ss,
        n_total_ss: ss.n_total_ss,
        gamma_eff: fit.gamma_eff,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    /// Axis values in internal units, one per axis.
    pub coords: Vec<f64>,
    pub values: Option<PointValues>,
    /// Why `values` is missing.
    pub diagnostic: Option<String>,
}

impl SweepCell {
    pub fn is_stable(&self) -> bool {
        self.values.is_some_and(|v| v.is_stable())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<SweepAxis>,
    /// Row-major over the axes, the last axis varying fastest.
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn diagnostics(&self) -> impl Iterator<Item = (&SweepCell, &str)> {
        self.cells
            .iter()
            .filter_map(|c| c.diagnostic.as_deref().map(|d| (c, d)))
    }
}

/// Grid points of the configured axes, in output order.
pub fn grid(axes: &[SweepAxis]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        let values = axis.values();
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

pub fn evaluate_cell(config: &RunConfig, coords: &[f64]) -> SweepCell {
    let cfg = config
        .sweep
        .iter()
        .zip(coords)
        .fold(config.clone(), |c, (axis, &v)| c.with_param(axis.param, v));
    match evaluate_point(&cfg) {
        Ok(v) => SweepCell {
            coords: coords.to_vec(),
            values: Some(v),
            diagnostic: None,
        },
        Err(e) => SweepCell {
            coords: coords.to_vec(),
            values: None,
            diagnostic: Some(e.to_string()),
        },
    }
}

/// Evaluates every grid cell on the rayon pool; the result is in grid order.
pub fn run_sweep(config: &RunConfig) -> SweepResult {
    let points = if config.sweep.is_empty() {
        Vec::new()
    } else {
        grid(&config.sweep)
    };
    let cells = points
        .into_par_iter()
        .map(|p| evaluate_cell(config, &p))
        .collect();
    SweepResult {
        axes: config.sweep.clone(),
        cells,
    }
}

/// Single-threaded reference for [`run_sweep`].
pub fn run_sweep_sequential(config: &RunConfig) -> SweepResult {
    let points = if config.sweep.is_empty() {
        Vec::new()
    } else {
        grid(&config.sweep)
    };
    let cells = points.iter().map(|p| evaluate_cell(config, p)).collect();
    SweepResult {
        axes: config.sweep.clone(),
        cells,
    }
}
