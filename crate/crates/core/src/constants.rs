//! Reference tables: physical constants, Rb-87 D2-line data, graphene
//! material data and the red-point operating parameters.
//!
//! All frequencies are stored as angular frequencies (rad/s). Values quoted
//! in the literature as "MHz", "kHz" or "Hz" are ordinary frequencies and
//! carry an explicit factor of 2π here.

use std::f64::consts::TAU;

/// Version tag of the tables in this module. Bump whenever a value changes.
pub const TABLE_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Boltzmann constant (J/K).
    pub k_boltzmann: f64,
    /// Speed of light in vacuum (m/s).
    pub c_light: f64,
    /// Vacuum permeability (N/A^2).
    pub mu0: f64,
    /// Fine-structure constant used by the graphene reflection model.
    pub alpha_fs: f64,
    /// Ratio of the graphene Fermi velocity to the speed of light.
    pub v_tilde: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 values, with α = 1/137 and ṽ = 1/300 for the Dirac-cone
    /// reflection model.
    pub const SI: PhysicalConstants = PhysicalConstants {
        hbar: 1.054_571_817e-34,
        k_boltzmann: 1.380_649e-23,
        c_light: 299_792_458.0,
        mu0: 1.256_637_062_12e-6,
        alpha_fs: 1.0 / 137.0,
        v_tilde: 1.0 / 300.0,
    };

    /// Planck constant h = 2πħ.
    pub fn planck(&self) -> f64 {
        TAU * self.hbar
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::SI
    }
}

/// Rb-87 D2 line (5S1/2 -> 5P3/2).
pub mod rb87 {
    use std::f64::consts::TAU;

    /// Vacuum wavelength of the D2 line (m).
    pub const D2_WAVELENGTH: f64 = 780.241e-9;
    /// Natural linewidth, Γ = 2π × 6.07 MHz.
    pub const LINEWIDTH: f64 = TAU * 6.07e6;
    /// Atomic mass (kg).
    pub const MASS: f64 = 1.443_160_648e-25;
    /// Ground-state static scalar polarizability (C² m²/J).
    ///
    /// h × 0.0794 Hz/(V/cm)², i.e. about 319 atomic units
    /// (D. A. Steck, "Rubidium 87 D Line Data", rev. 2.2.1).
    pub const STATIC_POLARIZABILITY: f64 = TAU * 1.054_571_817e-34 * 0.0794e-4;
}

/// Suspended graphene, bulk-graphite material constants and the reference
/// doubly clamped geometry.
pub mod graphene {
    pub const DENSITY: f64 = 2200.0;
    pub const YOUNGS_MODULUS: f64 = 1.0e12;
    pub const THICKNESS: f64 = 0.3e-9;
    pub const LENGTH: f64 = 5.0e-6;
    pub const WIDTH: f64 = 5.0e-6;
    pub const TENSION: f64 = 1.0e-9;
    /// Clamping coefficient of a doubly clamped beam.
    pub const CLAMPING_DOUBLY_CLAMPED: f64 = 1.03;
    /// Clamping coefficient of a cantilever.
    pub const CLAMPING_CANTILEVER: f64 = 0.162;
}

/// The operating point used for the steady-state maps and the decay traces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedPointParameters {
    /// Lamb-Dicke parameter.
    pub eta: f64,
    /// Atomic linewidth Γ (rad/s).
    pub gamma: f64,
    /// Flexural mode frequency ν (rad/s).
    pub nu: f64,
    /// Atomic centre-of-mass phonon frequency (rad/s).
    pub omega_ph: f64,
    /// Rabi frequency Ω (rad/s).
    pub omega_rabi: f64,
    /// Atom-membrane coupling g (rad/s).
    pub g: f64,
    /// Laser detuning Δ (rad/s).
    pub delta: f64,
    /// Atom-surface distance (m).
    pub z_a: f64,
    /// Retarded Casimir-Polder coefficient in Hz µm⁴ (ordinary frequency).
    pub c4_hz_um4: f64,
}

const RED_POINT: RedPointParameters = RedPointParameters {
    eta: 0.25,
    gamma: TAU * 6.07e6,
    nu: TAU * 2.7e6,
    omega_ph: TAU * 477.0,
    omega_rabi: TAU * 10.0e6,
    g: -TAU * 47.7e3,
    delta: TAU * 36.0e6,
    z_a: 0.1e-6,
    c4_hz_um4: -14.26,
};

pub fn red_point() -> RedPointParameters {
    RED_POINT
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn red_point_table() {
        let rp = red_point();
        assert_eq!(rp.delta, TAU * 3.6e7);
        assert!(rp.g < 0.0);
        assert_eq!(rp.eta, 0.25);
        assert_eq!(rp.c4_hz_um4, -14.26);
    }

    #[test]
    fn constants_positive() {
        let c = PhysicalConstants::SI;
        for v in [
            c.hbar,
            c.k_boltzmann,
            c.c_light,
            c.mu0,
            c.alpha_fs,
            c.v_tilde,
        ] {
            assert!(v > 0.0);
        }
        assert_eq!(c.alpha_fs, 1.0 / 137.0);
        assert_eq!(c.v_tilde, 1.0 / 300.0);
    }

    #[test]
    fn static_polarizability_in_atomic_units() {
        // 4πε0 a0³ in SI
        let c = PhysicalConstants::SI;
        let eps0 = 1.0 / (c.mu0 * c.c_light * c.c_light);
        let a0: f64 = 5.291_772_109e-11;
        let au = 4.0 * std::f64::consts::PI * eps0 * a0.powi(3);
        let alpha_au = rb87::STATIC_POLARIZABILITY / au;
        assert!((alpha_au - 319.0).abs() < 1.0, "{alpha_au}");
    }
}
