//! Fundamental flexural mode of a suspended graphene sheet.

use std::f64::consts::TAU;

use crate::constants::{graphene, PhysicalConstants};
use crate::error::{invalid, Result};

/// Share of the tension term in the beam resonance formula.
const TENSION_COEFFICIENT: f64 = 0.57;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneSheet {
    pub length_l: f64,
    pub width_w: f64,
    pub thickness_t: f64,
    pub density_rho: f64,
    pub youngs_e: f64,
    /// Built-in tension (N).
    pub tension_t: f64,
    /// Clamping coefficient A.
    pub clamping_a: f64,
}

impl Default for GrapheneSheet {
    fn default() -> Self {
        Self {
            length_l: graphene::LENGTH,
            width_w: graphene::WIDTH,
            thickness_t: graphene::THICKNESS,
            density_rho: graphene::DENSITY,
            youngs_e: graphene::YOUNGS_MODULUS,
            tension_t: graphene::TENSION,
            clamping_a: graphene::CLAMPING_DOUBLY_CLAMPED,
        }
    }
}

impl GrapheneSheet {
    /// Checks positivity of every field. Zero tension is allowed.
    pub fn validate(&self) -> Result<()> {
        let strict = [
            ("length", self.length_l),
            ("width", self.width_w),
            ("thickness", self.thickness_t),
            ("density", self.density_rho),
            ("youngs_modulus", self.youngs_e),
            ("clamping", self.clamping_a),
        ];
        for (name, v) in strict {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(
                    "graphene sheet",
                    format!("{name} must be positive, got {v}"),
                ));
            }
        }
        if !(self.tension_t >= 0.0 && self.tension_t.is_finite()) {
            return Err(invalid(
                "graphene sheet",
                format!("tension must be non-negative, got {}", self.tension_t),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneMode {
    /// Angular frequency ν (rad/s).
    pub nu: f64,
    /// Fundamental wavevector 2π/L (1/m).
    pub q0: f64,
    pub mass_m: f64,
    /// sqrt(ħ/(2Mν)) (m).
    pub zero_point: f64,
}

/// ν = 2π sqrt[(A sqrt(E/ρ) t/L²)² + 0.57 A² T/(ρ L² w t)].
pub fn fundamental_frequency(sheet: &GrapheneSheet) -> Result<f64> {
    sheet.validate()?;
    let s = sheet;
    let l2 = s.length_l * s.length_l;
    let bending = s.clamping_a * (s.youngs_e / s.density_rho).sqrt() * s.thickness_t / l2;
    let tension = s.clamping_a.powi(2) * TENSION_COEFFICIENT * s.tension_t
        / (s.density_rho * l2 * s.width_w * s.thickness_t);
    Ok(TAU * (bending * bending + tension).sqrt())
}

pub fn membrane_mass(sheet: &GrapheneSheet) -> Result<f64> {
    sheet.validate()?;
    Ok(sheet.density_rho * sheet.length_l * sheet.width_w * sheet.thickness_t)
}

pub fn mode_descriptor(
    sheet: &GrapheneSheet,
    constants: &PhysicalConstants,
) -> Result<MembraneMode> {
    let nu = fundamental_frequency(sheet)?;
    let mass_m = membrane_mass(sheet)?;
    Ok(MembraneMode::new(nu, mass_m, sheet.length_l, constants))
}

impl MembraneMode {
    /// Mode with an externally pinned frequency.
    pub fn new(nu: f64, mass_m: f64, length_l: f64, constants: &PhysicalConstants) -> Self {
        Self {
            nu,
            q0: TAU / length_l,
            mass_m,
            zero_point: (constants.hbar / (2.0 * mass_m * nu)).sqrt(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HBAR: f64 = PhysicalConstants::SI.hbar;

    #[test]
    fn table_frequency() {
        let f = fundamental_frequency(&GrapheneSheet::default()).unwrap() / TAU;
        assert!((f / 2.72e6 - 1.0).abs() < 0.02, "{f}");
    }

    #[test]
    fn tensionless_limit() {
        let s = GrapheneSheet {
            tension_t: 0.0,
            ..Default::default()
        };
        let expect = TAU * s.clamping_a * (s.youngs_e / s.density_rho).sqrt() * s.thickness_t
            / s.length_l.powi(2);
        assert!((fundamental_frequency(&s).unwrap() / expect - 1.0).abs() < 1e-15);
        let thick = GrapheneSheet {
            thickness_t: 2.0 * s.thickness_t,
            ..s
        };
        let ratio = fundamental_frequency(&thick).unwrap() / expect;
        assert!((ratio - 2.0).abs() < 1e-14);
    }

    #[test]
    fn mass_values() {
        let m = membrane_mass(&GrapheneSheet::default()).unwrap();
        assert!((m / 1.65e-17 - 1.0).abs() < 1e-12);
        let unit = GrapheneSheet {
            length_l: 1.0,
            width_w: 1.0,
            thickness_t: 1.0,
            density_rho: 1.0,
            ..Default::default()
        };
        assert_eq!(membrane_mass(&unit).unwrap(), 1.0);
        let dense = GrapheneSheet {
            density_rho: 4400.0,
            ..Default::default()
        };
        assert!((membrane_mass(&dense).unwrap() / m - 2.0).abs() < 1e-14);
    }

    #[test]
    fn descriptor() {
        let sheet = GrapheneSheet::default();
        let mode = mode_descriptor(&sheet, &PhysicalConstants::SI).unwrap();
        assert!((mode.q0 - 1.256_637_061_4e6).abs() < 1.0);
        assert_eq!(mode.nu, fundamental_frequency(&sheet).unwrap());
        assert!(
            (mode.zero_point / 4.3e-13 - 1.0).abs() < 0.02,
            "{}",
            mode.zero_point
        );
        let back = mode.zero_point.powi(2) * 2.0 * mode.mass_m * mode.nu;
        assert!((back / HBAR - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_sheet() {
        let s = GrapheneSheet {
            tension_t: -1e-9,
            ..Default::default()
        };
        assert!(fundamental_frequency(&s).is_err());
        let s = GrapheneSheet {
            length_l: 0.0,
            ..Default::default()
        };
        assert!(membrane_mass(&s).is_err());
    }

    proptest! {
        #[test]
        fn monotone_in_tension_and_modulus(t in 0.0f64..1e-8, dt in 1e-12f64..1e-8, e in 1e10f64..2e12, de in 1e9f64..1e12) {
            let base = GrapheneSheet { tension_t: t, youngs_e: e, ..Default::default() };
            let f0 = fundamental_frequency(&base).unwrap();
            let ft = fundamental_frequency(&GrapheneSheet { tension_t: t + dt, ..base }).unwrap();
            let fe = fundamental_frequency(&GrapheneSheet { youngs_e: e + de, ..base }).unwrap();
            prop_assert!(ft > f0);
            prop_assert!(fe > f0);
        }

        #[test]
        fn zero_point_identity(nu in 1e3f64..1e9, mass in 1e-20f64..1e-12) {
            let mode = MembraneMode::new(nu, mass, 5e-6, &PhysicalConstants::SI);
            let back = mode.zero_point.powi(2) * 2.0 * mode.mass_m * mode.nu;
            prop_assert!((back / HBAR - 1.0).abs() < 1e-12);
        }
    }
}
