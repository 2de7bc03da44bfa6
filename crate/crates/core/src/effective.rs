//! Effective linearised model obtained after adiabatic elimination of the
//! excited atomic state.
//!
//! With D = 4Δ² + Γ²:
//!
//! ```text
//! γ = Γ Ω² η² / D
//! ξ = η Ω² Δ / D
//! ω = ω_ph − η² Ω² Δ / D + ω_shift
//! α = ξ / (iω + γ/2)
//! β = −i g |α|² / ν
//! ```

use num_complex::Complex64;

use crate::casimir_polder::AtomSpecies;
use crate::error::{invalid, Error, Result};
use crate::membrane::MembraneMode;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    /// Ω (rad/s).
    pub rabi_omega: f64,
    /// Δ = ω_eg − ω_L (rad/s).
    pub detuning_delta: f64,
    pub lamb_dicke_eta: f64,
    /// Atomic centre-of-mass trap frequency (rad/s).
    pub phonon_omega_ph: f64,
}

impl DriveParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rabi_omega > 0.0 && self.rabi_omega.is_finite()) {
            return Err(invalid(
                "drive",
                format!("rabi frequency must be positive, got {}", self.rabi_omega),
            ));
        }
        if !(self.phonon_omega_ph > 0.0 && self.phonon_omega_ph.is_finite()) {
            return Err(invalid(
                "drive",
                format!(
                    "phonon frequency must be positive, got {}",
                    self.phonon_omega_ph
                ),
            ));
        }
        if !(self.lamb_dicke_eta > 0.0 && self.lamb_dicke_eta < 1.0) {
            return Err(invalid(
                "drive",
                format!(
                    "Lamb-Dicke parameter must lie in (0, 1), got {}",
                    self.lamb_dicke_eta
                ),
            ));
        }
        if !self.detuning_delta.is_finite() {
            return Err(invalid("drive", "detuning must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    /// Light-shifted phonon frequency ω (rad/s), may be negative.
    pub omega: f64,
    pub xi_drive: f64,
    pub g_coupling: f64,
    pub gamma_cool: f64,
    pub alpha_amp: Complex64,
    pub beta_amp: Complex64,
    pub omega_g_shift: f64,
    /// Flexural frequency ν the model was built for (rad/s).
    pub nu: f64,
}

impl EffectiveParams {
    /// Assembles the parameter set from the reduced quantities and derives
    /// α and β.
    pub fn from_reduced(
        omega: f64,
        xi_drive: f64,
        g_coupling: f64,
        gamma_cool: f64,
        nu: f64,
    ) -> Result<Self> {
        if !(gamma_cool > 0.0) {
            return Err(invalid(
                "effective parameters",
                format!("gamma must be positive, got {gamma_cool}"),
            ));
        }
        if !(nu > 0.0) {
            return Err(invalid(
                "effective parameters",
                format!("nu must be positive, got {nu}"),
            ));
        }
        let alpha_amp = xi_drive / Complex64::new(gamma_cool / 2.0, omega);
        let beta_amp = Complex64::new(0.0, -g_coupling * alpha_amp.norm_sqr() / nu);
        Ok(Self {
            omega,
            xi_drive,
            g_coupling,
            gamma_cool,
            alpha_amp,
            beta_amp,
            omega_g_shift: 0.0,
            nu,
        })
    }

    /// |α|², the coherent part of the phonon number.
    pub fn alpha_sq(&self) -> f64 {
        self.alpha_amp.norm_sqr()
    }

    /// Same model with every rate multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let mut p = Self::from_reduced(
            s * self.omega,
            s * self.xi_drive,
            s * self.g_coupling,
            s * self.gamma_cool,
            s * self.nu,
        )?;
        p.omega_g_shift = s * self.omega_g_shift;
        Ok(p)
    }
}

/// Coupling g from the CP Fourier component: g = 2 q0 x_zp ω^|g⟩.
///
/// `omega_g` already carries the atomic density (see
/// [`cp_fourier_wq`](crate::casimir_polder::cp_fourier_wq)), so it is not
/// multiplied by n0 a second time.
pub fn coupling_from_fourier(mode: &MembraneMode, omega_g: f64) -> f64 {
    2.0 * mode.q0 * mode.zero_point * omega_g
}

/// Reduces the drive and coupling to the linearised model.
///
/// The coupling is `g_override` when given, otherwise
/// [`coupling_from_fourier`]. `omega_g_shift` is added to ω.
pub fn effective_params(
    species: &AtomSpecies,
    drive: &DriveParams,
    mode: &MembraneMode,
    omega_g: f64,
    omega_g_shift: f64,
    g_override: Option<f64>,
) -> Result<EffectiveParams> {
    drive.validate()?;
    let gamma_atom = species.linewidth_gamma;
    let delta = drive.detuning_delta;
    let denom = 4.0 * delta * delta + gamma_atom * gamma_atom;
    if !(denom > 0.0) {
        return Err(Error::Singular("4Δ² + Γ² vanishes (Γ = Δ = 0)".into()));
    }
    let eta = drive.lamb_dicke_eta;
    let rabi2 = drive.rabi_omega * drive.rabi_omega;
    let gamma = gamma_atom * rabi2 * eta * eta / denom;
    let xi = eta * rabi2 * delta / denom;
    let omega = drive.phonon_omega_ph - eta * eta * rabi2 * delta / denom + omega_g_shift;
    let g = g_override.unwrap_or_else(|| coupling_from_fourier(mode, omega_g));
    let mut p = EffectiveParams::from_reduced(omega, xi, g, gamma, mode.nu)?;
    p.omega_g_shift = omega_g_shift;
    Ok(p)
}

/// Minimum Δ/x ratio accepted for adiabatic elimination.
pub const ADIABATIC_MIN_RATIO: f64 = 3.0;
/// Largest η for which the first-order Lamb-Dicke expansion is trusted.
pub const LAMB_DICKE_MAX_ETA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    /// (name, value) pairs; Δ ratios are |Δ|/x.
    pub ratios: Vec<(&'static str, f64)>,
    pub warnings: Vec<String>,
}

impl RegimeReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Checks |Δ| ≫ Ω, ω_ph, ν, |ω^|g⟩|, Γ and the Lamb-Dicke condition.
pub fn validate_regime(
    species: &AtomSpecies,
    drive: &DriveParams,
    mode: &MembraneMode,
    params: &EffectiveParams,
) -> RegimeReport {
    let delta = drive.detuning_delta.abs();
    let scales = [
        ("delta/omega_rabi", drive.rabi_omega),
        ("delta/omega_ph", drive.phonon_omega_ph),
        ("delta/nu", mode.nu),
        ("delta/omega_g_shift", params.omega_g_shift.abs()),
        ("delta/gamma_atom", species.linewidth_gamma),
    ];
    let mut ratios = Vec::with_capacity(scales.len() + 1);
    let mut warnings = Vec::new();
    for (name, scale) in scales {
        if scale == 0.0 {
            continue;
        }
        let r = delta / scale;
        ratios.push((name, r));
        if r < ADIABATIC_MIN_RATIO {
            warnings.push(format!(
                "adiabatic elimination invalid: {name} = {r:.3} < {ADIABATIC_MIN_RATIO}"
            ));
        }
    }
    let eta = drive.lamb_dicke_eta;
    ratios.push(("eta", eta));
    if eta > LAMB_DICKE_MAX_ETA {
        warnings.push(format!(
            "Lamb-Dicke expansion unreliable: eta = {eta:.3} > {LAMB_DICKE_MAX_ETA}"
        ));
    }
    RegimeReport { ratios, warnings }
}
