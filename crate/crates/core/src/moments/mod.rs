//! Closed moment equations of the linearised atom-membrane model.
//!
//! The state vector is `x = [n, m, k1, ..., k12]` where `n` is the
//! fluctuation occupation of the atomic phonon, `m` the flexural occupation
//! and `k_i` real quadrature coherences. It obeys `ẋ = A x + b` with
//! constant coefficients.

mod closed;
mod evolve;
mod integrator;
mod linear;
mod rate;
mod system;
mod thermal;

pub use closed::{steady_state_closed, CubicFrequencies};
pub use evolve::{evolve, Trajectory};
pub use integrator::{evolve_implicit, ImplicitConfig};
pub use linear::steady_state_linear;
pub use rate::{cooling_rate, slow_eigenvalue, spectral_abscissa, CoolingFit};
pub use system::{build_system, Mat14, MomentState, MomentSystem, Vec14};
pub use thermal::{occupation_from_temperature, temperature_from_occupation};

/// Stationary solution of the moment system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub m_ss: f64,
    /// Fluctuation part ⟨δa†δa⟩.
    pub n_ss: f64,
    /// |α|² + n_ss.
    pub n_total_ss: f64,
    /// k1..k12, stored zero-based.
    pub k_ss: [f64; 12],
    pub lambda_cubed: f64,
    pub mu_cubed: f64,
}

impl SteadyState {
    /// Coherence `k_i` with the one-based index used in the equations.
    pub fn k(&self, i: usize) -> f64 {
        self.k_ss[i - 1]
    }

    pub fn as_state(&self) -> MomentState {
        MomentState {
            n: self.n_ss,
            m: self.m_ss,
            k: self.k_ss,
        }
    }

    /// Negative occupations signal a parameter point outside the physical
    /// region; they are reported, never clamped.
    pub fn is_physical(&self) -> bool {
        self.m_ss >= 0.0 && self.n_ss >= 0.0
    }
}
