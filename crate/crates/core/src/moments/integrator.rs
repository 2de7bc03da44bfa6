//! Adaptive three-stage Gauss-Legendre integration (order 6, A-stable) of
//! the linear moment system. The stage equations are linear and are solved
//! directly; step sizes are chosen by step doubling.

use nalgebra::{DMatrix, DVector};

use super::evolve::{check_grid, Trajectory};
use super::rate::spectral_abscissa;
use super::system::{MomentState, MomentSystem, Vec14};
use crate::error::{Error, Result};

const S15: f64 = 3.872_983_346_207_417;

const BUTCHER_A: [[f64; 3]; 3] = [
    [5.0 / 36.0, 2.0 / 9.0 - S15 / 15.0, 5.0 / 36.0 - S15 / 30.0],
    [5.0 / 36.0 + S15 / 24.0, 2.0 / 9.0, 5.0 / 36.0 - S15 / 24.0],
    [5.0 / 36.0 + S15 / 30.0, 2.0 / 9.0 + S15 / 15.0, 5.0 / 36.0],
];
const BUTCHER_B: [f64; 3] = [5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
}

impl Default for ImplicitConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            initial_step: 1e-6,
            max_steps: 1_000_000,
        }
    }
}

fn gl3_step(system: &MomentSystem, x: &Vec14, h: f64) -> Result<Vec14> {
    let a = &system.matrix_a;
    let mut lhs = DMatrix::<f64>::identity(42, 42);
    for i in 0..3 {
        for j in 0..3 {
            let c = h * BUTCHER_A[i][j];
            for r in 0..14 {
                for s in 0..14 {
                    lhs[(14 * i + r, 14 * j + s)] -= c * a[(r, s)];
                }
            }
        }
    }
    let f = system.rhs(x);
    let rhs = DVector::from_fn(42, |i, _| f[i % 14]);
    let stages = lhs
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("Gauss-Legendre stage system".into()))?;
    let mut out = *x;
    for i in 0..3 {
        for r in 0..14 {
            out[r] += h * BUTCHER_B[i] * stages[14 * i + r];
        }
    }
    Ok(out)
}

/// Integrates `ẋ = A x + b` and samples the solution on `t_grid`.
pub fn evolve_implicit(
    system: &MomentSystem,
    x0: &MomentState,
    t_grid: &[f64],
    cfg: &ImplicitConfig,
) -> Result<Trajectory> {
    check_grid(t_grid)?;
    let mut x = x0.to_vector();
    let mut t = 0.0;
    let mut h = cfg.initial_step;
    let mut steps = 0;
    let mut states = Vec::with_capacity(t_grid.len());
    for &target in t_grid {
        while t < target {
            if steps >= cfg.max_steps {
                return Err(Error::Singular(format!(
                    "step budget exhausted at t = {t:e}"
                )));
            }
            steps += 1;
            let last = h >= target - t;
            let step = if last { target - t } else { h };
            let full = gl3_step(system, &x, step)?;
            let half = gl3_step(system, &gl3_step(system, &x, 0.5 * step)?, 0.5 * step)?;
            let diff = half - full;
            let scale = cfg.abs_tol + cfg.rel_tol * half.amax().max(x.amax());
            let err = diff.amax() / 63.0 / scale;
            if err <= 1.0 {
                x = half + diff / 63.0;
                t = if last { target } else { t + step };
            }
            let factor = if err == 0.0 {
                4.0
            } else {
                (0.9 * err.powf(-1.0 / 7.0)).clamp(0.2, 4.0)
            };
            if !(last && err <= 1.0) {
                h = step * factor;
            }
        }
        states.push(MomentState::from_vector(&x));
    }
    let diverged = spectral_abscissa(system) > 0.0 || !x.iter().all(|v| v.is_finite());
    Ok(Trajectory {
        times: t_grid.to_vec(),
        states,
        diverged,
    })
}
