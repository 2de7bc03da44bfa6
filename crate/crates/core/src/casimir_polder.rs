//! Ground-state Casimir-Polder potential of an atom above a free-standing
//! graphene sheet.
//!
//! The nonresonant potential is an imaginary-frequency integral
//!
//! ```text
//! U(z) = ħµ0/(8π²) ∫dξ ξ² α(iξ) ∫dk∥ e^{-2 k∥ γ z}/γ [R_TE + R_TM (1 - 2 k∥² γ² c²/ξ²)]
//! ```
//!
//! with γ = sqrt(1 + ξ²/(c² k∥²)). Internally both integrals are rewritten in
//! the dimensionless variables u = 2zξ/c and x = 2zκ, where κ = k∥γ is the
//! decay constant of the evanescent wave. Then `k∥ dk∥/κ = dκ`, the
//! reflection coefficients depend on (u, x) only, and each integral carries
//! an explicit `e^{-x}` factor that [`integrate_exp_weighted`] absorbs.

use std::f64::consts::{PI, TAU};

use crate::bessel::bessel_k1;
use crate::constants::{rb87, PhysicalConstants};
use crate::error::{domain, invalid, Error, Result};
use crate::quadrature::{integrate_exp_weighted, QuadConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpecies {
    /// ω_eg (rad/s).
    pub transition_angular_frequency: f64,
    /// Γ (rad/s).
    pub linewidth_gamma: f64,
    /// α₀ (C² m²/J).
    pub static_polarizability: f64,
    /// kg
    pub atomic_mass: f64,
    /// m
    pub d2_wavelength: f64,
}

impl AtomSpecies {
    /// Builds a species from its D2 wavelength; ω_eg = 2πc/λ.
    pub fn from_wavelength(
        d2_wavelength: f64,
        linewidth_gamma: f64,
        static_polarizability: f64,
        atomic_mass: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        let species = Self {
            transition_angular_frequency: TAU * constants.c_light / d2_wavelength,
            linewidth_gamma,
            static_polarizability,
            atomic_mass,
            d2_wavelength,
        };
        species.validate()?;
        Ok(species)
    }

    pub fn rb87() -> Self {
        Self::from_wavelength(
            rb87::D2_WAVELENGTH,
            rb87::LINEWIDTH,
            rb87::STATIC_POLARIZABILITY,
            rb87::MASS,
            &PhysicalConstants::SI,
        )
        .expect("Rb-87 table is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            (
                "transition_angular_frequency",
                self.transition_angular_frequency,
            ),
            ("linewidth_gamma", self.linewidth_gamma),
            ("static_polarizability", self.static_polarizability),
            ("atomic_mass", self.atomic_mass),
            ("d2_wavelength", self.d2_wavelength),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(
                    "atom species",
                    format!("{name} must be positive, got {v}"),
                ));
            }
        }
        Ok(())
    }
}

impl Default for AtomSpecies {
    fn default() -> Self {
        Self::rb87()
    }
}

/// Kinematic factors of the (ξ, k∥) integrand for a vacuum half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpIntegrandKinematics {
    pub xi: f64,
    pub k_parallel: f64,
    /// sqrt(1 + ξ²/(c² k∥²)), always ≥ 1.
    pub gamma_0z: f64,
    /// ξ/c
    pub k0: f64,
}

impl CpIntegrandKinematics {
    pub fn new(xi: f64, k_parallel: f64, constants: &PhysicalConstants) -> Result<Self> {
        if xi < 0.0 || k_parallel <= 0.0 {
            return Err(domain(
                "CpIntegrandKinematics::new",
                format!("need xi >= 0 and k_parallel > 0, got ({xi}, {k_parallel})"),
            ));
        }
        let k0 = xi / constants.c_light;
        Ok(Self {
            xi,
            k_parallel,
            gamma_0z: (1.0 + (k0 / k_parallel).powi(2)).sqrt(),
            k0,
        })
    }

    /// Evanescent decay constant κ = k∥ γ_0z = sqrt(k∥² + k0²).
    pub fn kappa(&self) -> f64 {
        self.k_parallel.hypot(self.k0)
    }
}

/// Single-resonance polarizability at imaginary frequency,
/// α(iξ) = α₀ ω_eg² / (ω_eg² + ξ²).
pub fn polarizability_iw(species: &AtomSpecies, xi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(domain(
            "polarizability_iw",
            format!("xi must be >= 0, got {xi}"),
        ));
    }
    Ok(polarizability_unchecked(species, xi))
}

fn polarizability_unchecked(species: &AtomSpecies, xi: f64) -> f64 {
    let w2 = species.transition_angular_frequency.powi(2);
    species.static_polarizability * w2 / (w2 + xi * xi)
}

/// TE and TM reflection coefficients of a gapless, undoped graphene sheet,
/// returned as `(R_TE, R_TM)`.
pub fn reflection_coeffs(
    xi: f64,
    k_parallel: f64,
    constants: &PhysicalConstants,
) -> Result<(f64, f64)> {
    if !(xi >= 0.0) || !(k_parallel >= 0.0) {
        return Err(domain(
            "reflection_coeffs",
            format!("need xi >= 0 and k_parallel >= 0, got ({xi}, {k_parallel})"),
        ));
    }
    if xi == 0.0 && k_parallel == 0.0 {
        return Err(Error::DegenerateInput);
    }
    Ok(reflection_scaled(
        xi / constants.c_light,
        k_parallel,
        constants,
    ))
}

// Homogeneous of degree zero in (k0, k∥): any common length scale works.
fn reflection_scaled(k0: f64, k_par: f64, constants: &PhysicalConstants) -> (f64, f64) {
    let a = 4.0 * PI * constants.alpha_fs;
    let light = k0.hypot(k_par);
    let dirac = k0.hypot(constants.v_tilde * k_par);
    let r_tm = a * light / (a * light + 8.0 * dirac);
    let r_te = -a * dirac / (a * dirac + 8.0 * light);
    (r_te, r_tm)
}

/// Matsubara frequency ξ_n = 2π k_B T n / ħ.
pub fn matsubara_frequency(n: u64, temperature: f64, constants: &PhysicalConstants) -> f64 {
    TAU * constants.k_boltzmann * temperature * n as f64 / constants.hbar
}

/// Fourier component of the retarded potential C4/z⁴ at wavevector `q`,
/// returned as the angular frequency ω = π C4 q n0 K1(q z) / (ħ z).
///
/// `c4_hz_um4` is an ordinary frequency times µm⁴, `q` in 1/m, `z_a` in m and
/// `n0` an areal density in 1/m².
pub fn cp_fourier_wq(c4_hz_um4: f64, q: f64, z_a: f64, n0: f64) -> Result<f64> {
    if !(q > 0.0) || !(z_a > 0.0) {
        return Err(domain(
            "cp_fourier_wq",
            format!("need q > 0 and z_a > 0, got ({q}, {z_a})"),
        ));
    }
    if !(n0 >= 0.0) {
        return Err(domain(
            "cp_fourier_wq",
            format!("n0 must be >= 0, got {n0}"),
        ));
    }
    let c4_hz_m4 = c4_hz_um4 * 1e-24;
    Ok(TAU * PI * c4_hz_m4 * q * n0 * bessel_k1(q * z_a)? / z_a)
}

/// Numerical evaluation of the Casimir-Polder integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpModel {
    pub constants: PhysicalConstants,
    pub quad: QuadConfig,
    /// Matsubara terms summed explicitly before the Euler-Maclaurin tail.
    pub max_direct_terms: u64,
}

impl Default for CpModel {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::SI,
            quad: QuadConfig::default(),
            max_direct_terms: 512,
        }
    }
}

impl CpModel {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            quad: QuadConfig::with_rel_tol(rel_tol),
            ..Self::default()
        }
    }

    fn inner_quad(&self) -> QuadConfig {
        QuadConfig {
            rel_tol: self.quad.rel_tol * 0.01,
            ..self.quad
        }
    }

    /// `∫_0^∞ e^{-t} [u² R_TE + R_TM (u² - 2x²)] dt` with x = u + t.
    fn k_integral(&self, u: f64) -> Result<f64> {
        let c = &self.constants;
        let q = integrate_exp_weighted(
            |t| {
                let x = u + t;
                let k_par = (t * (2.0 * u + t)).sqrt();
                let (r_te, r_tm) = reflection_scaled(u, k_par, c);
                u * u * r_te + r_tm * (u * u - 2.0 * x * x)
            },
            &self.inner_quad(),
        )?;
        Ok(q.value)
    }

    /// `α(iξ(u)) ∫ ... dt`; the frequency integrand without its `e^{-u}`.
    fn reduced_integrand(&self, species: &AtomSpecies, u: f64, c_q: f64) -> Result<f64> {
        Ok(polarizability_unchecked(species, c_q * u) * self.k_integral(u)?)
    }

    fn prefactor(&self, q: f64) -> f64 {
        let c = &self.constants;
        c.hbar * c.mu0 * c.c_light.powi(3) * q.powi(4) / (8.0 * PI * PI)
    }

    /// Zero-temperature ground-state potential (J) at distance `z_a` (m).
    pub fn ground_potential(&self, species: &AtomSpecies, z_a: f64) -> Result<f64> {
        if !(z_a > 0.0) {
            return Err(domain(
                "cp_potential_ground",
                format!("z_a must be > 0, got {z_a}"),
            ));
        }
        let q = 0.5 / z_a;
        let c_q = self.constants.c_light * q;
        let integral = self.outer_integral_from(species, 0.0, c_q)?;
        Ok(self.prefactor(q) * integral)
    }

    // ∫_{u0}^∞ e^{-u} G(u) du
    fn outer_integral_from(&self, species: &AtomSpecies, u0: f64, c_q: f64) -> Result<f64> {
        let failure = std::cell::Cell::new(None);
        let q = integrate_exp_weighted(
            |t| match self.reduced_integrand(species, u0 + t, c_q) {
                Ok(v) => v,
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            },
            &self.quad,
        )?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        Ok((-u0).exp() * q.value)
    }

    /// Retarded coefficient U(z) z⁴ expressed as an ordinary frequency times µm⁴.
    pub fn c4_hz_um4(&self, species: &AtomSpecies, z_a: f64) -> Result<f64> {
        let u = self.ground_potential(species, z_a)?;
        Ok(u * z_a.powi(4) / self.constants.planck() * 1e24)
    }

    /// Finite-temperature potential from the Matsubara sum
    /// `µ0 k_B T/(4π) Σ' F(ξ_n)` where the n = 0 term carries weight 1/2.
    ///
    /// The first `max_direct_terms` terms are summed explicitly; if the sum
    /// has not converged by then the remainder is replaced by its
    /// Euler-Maclaurin expansion (integral plus two endpoint corrections).
    pub fn matsubara_potential(
        &self,
        species: &AtomSpecies,
        z_a: f64,
        temperature: f64,
    ) -> Result<f64> {
        if !(z_a > 0.0) {
            return Err(domain(
                "matsubara_potential",
                format!("z_a must be > 0, got {z_a}"),
            ));
        }
        if !(temperature >= 0.0) {
            return Err(domain(
                "matsubara_potential",
                format!("temperature must be >= 0, got {temperature}"),
            ));
        }
        if temperature == 0.0 {
            return self.ground_potential(species, z_a);
        }
        let c = &self.constants;
        let q = 0.5 / z_a;
        let c_q = c.c_light * q;
        let du = matsubara_frequency(1, temperature, c) / c_q;
        let g =
            |u: f64| -> Result<f64> { Ok((-u).exp() * self.reduced_integrand(species, u, c_q)?) };

        let tol = self.quad.rel_tol;
        let mut sum = 0.5 * g(0.0)?;
        let mut n = 1u64;
        let mut converged = false;
        while n < self.max_direct_terms {
            let u = n as f64 * du;
            let term = g(u)?;
            sum += term;
            n += 1;
            // past the peak the terms fall off like e^{-Δu}; bound the tail geometrically
            let ratio = (-du).exp();
            if u > 4.0 && (term * ratio / (1.0 - ratio)).abs() < tol * sum.abs() {
                converged = true;
                break;
            }
        }
        let mut total = du * sum;
        if !converged {
            let u_n = n as f64 * du;
            let tail_integral = self.outer_integral_from(species, u_n, c_q)?;
            let h = 1e-4_f64.max(du);
            let derivative =
                (g(u_n + h)? - g((u_n - h).max(0.0))?) / (u_n + h - (u_n - h).max(0.0));
            total += tail_integral + 0.5 * du * g(u_n)? - du * du / 12.0 * derivative;
        }
        Ok(self.prefactor(q) * total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rb() -> AtomSpecies {
        AtomSpecies::rb87()
    }

    #[test]
    fn polarizability_reduction() {
        let s = rb();
        let w = s.transition_angular_frequency;
        assert_eq!(polarizability_iw(&s, 0.0).unwrap(), s.static_polarizability);
        let half = polarizability_iw(&s, w).unwrap();
        assert!((half / s.static_polarizability - 0.5).abs() < 1e-15);
        let tenth = polarizability_iw(&s, 10.0 * w).unwrap();
        assert!((tenth / s.static_polarizability - 1.0 / 101.0).abs() < 1e-15);
        assert!(polarizability_iw(&s, -1.0).is_err());
    }

    #[test]
    fn transition_frequency_from_wavelength() {
        let s = rb();
        let c = PhysicalConstants::SI;
        let expect = TAU * c.c_light / s.d2_wavelength;
        assert!(((s.transition_angular_frequency - expect) / expect).abs() < 1e-12);
    }

    #[test]
    fn reflection_limits() {
        let c = PhysicalConstants::SI;
        let pa = PI * c.alpha_fs;
        // k∥ → 0 at finite ξ
        let (te, tm) = reflection_coeffs(1e14, 1e-6, &c).unwrap();
        let lim = pa / (pa + 2.0);
        assert!((tm - lim).abs() < 1e-12);
        assert!((te + lim).abs() < 1e-12);
        assert!((lim - 0.011337).abs() < 5e-6);
        // ξ = 0
        let (te, tm) = reflection_coeffs(0.0, 1e6, &c).unwrap();
        let a = 4.0 * pa;
        let v = c.v_tilde;
        assert!((tm - a / (a + 8.0 * v)).abs() < 1e-15);
        assert!((te + a * v / (a * v + 8.0)).abs() < 1e-15);
        assert!((tm - 0.7747).abs() < 1e-4);
        assert!((te + 3.82e-5).abs() < 1e-7);
    }

    #[test]
    fn reflection_degenerate_and_domain() {
        let c = PhysicalConstants::SI;
        assert_eq!(reflection_coeffs(0.0, 0.0, &c), Err(Error::DegenerateInput));
        assert!(reflection_coeffs(-1.0, 1.0, &c).is_err());
    }

    #[test]
    fn reflection_vanishes_with_coupling() {
        let mut c = PhysicalConstants::SI;
        c.alpha_fs = 1e-12;
        let (te, tm) = reflection_coeffs(3e14, 2e6, &c).unwrap();
        assert!(tm.abs() < 1e-10 && te.abs() < 1e-10);
    }

    #[test]
    fn kinematics() {
        let c = PhysicalConstants::SI;
        let k = CpIntegrandKinematics::new(3e14, 1e6, &c).unwrap();
        assert!((k.k0 - 3e14 / c.c_light).abs() < 1e-9);
        assert!(k.gamma_0z >= 1.0);
        assert!((k.kappa() - k.k_parallel * k.gamma_0z).abs() / k.kappa() < 1e-14);
    }

    #[test]
    fn matsubara_first_frequency() {
        let xi1 = matsubara_frequency(1, 300.0, &PhysicalConstants::SI);
        assert!((xi1 / 2.47e14 - 1.0).abs() < 5e-3, "{xi1}");
    }

    #[test]
    fn ground_potential_domain() {
        let m = CpModel::default();
        assert!(m.ground_potential(&rb(), 0.0).is_err());
        assert!(m.ground_potential(&rb(), -1e-6).is_err());
        assert!(m.matsubara_potential(&rb(), 1e-6, -1.0).is_err());
    }

    #[test]
    fn potential_scales_with_polarizability() {
        let m = CpModel::default();
        let mut s = rb();
        let u1 = m.ground_potential(&s, 1e-6).unwrap();
        s.static_polarizability *= 1e-30;
        let u2 = m.ground_potential(&s, 1e-6).unwrap();
        assert!(u1 < 0.0);
        assert!((u2 / u1 - 1e-30).abs() < 1e-36);
    }

    #[test]
    fn retarded_coefficient_converges() {
        let m = CpModel::default();
        let c5 = m.c4_hz_um4(&rb(), 5e-6).unwrap();
        let c20 = m.c4_hz_um4(&rb(), 20e-6).unwrap();
        assert!(c5 < 0.0);
        assert!(((c5 - c20) / c20).abs() < 0.02);
        let u10 = m.ground_potential(&rb(), 10e-6).unwrap();
        let u20 = m.ground_potential(&rb(), 20e-6).unwrap();
        assert!((u10 / u20 / 16.0 - 1.0).abs() < 0.05);
    }

    #[test]
    fn potential_attractive_and_monotone() {
        let m = CpModel::with_rel_tol(1e-6);
        let mut prev = f64::NEG_INFINITY;
        for z in [0.05e-6, 0.1e-6, 0.3e-6, 1e-6, 3e-6] {
            let u = m.ground_potential(&rb(), z).unwrap();
            assert!(u < 0.0 && u > prev, "z={z}: {u}");
            prev = u;
        }
    }

    #[test]
    fn classical_limit_is_zeroth_matsubara_term() {
        // at 20 µm and 300 K only n = 0 survives: U = -µ0 c² k_B T α0 R_TM(0)/(16π z³)
        let m = CpModel::default();
        let c = m.constants;
        let s = rb();
        let z: f64 = 20e-6;
        let a = 4.0 * PI * c.alpha_fs;
        let r_tm0 = a / (a + 8.0 * c.v_tilde);
        let expect =
            -c.mu0 * c.c_light.powi(2) * c.k_boltzmann * 300.0 * s.static_polarizability * r_tm0
                / (16.0 * PI * z.powi(3));
        let u = m.matsubara_potential(&s, z, 300.0).unwrap();
        assert!((u / expect - 1.0).abs() < 1e-7, "{}", u / expect);
    }

    #[test]
    fn tail_expansion_matches_direct_sum() {
        let s = rb();
        let direct = CpModel::default();
        let truncated = CpModel {
            max_direct_terms: 32,
            ..CpModel::default()
        };
        for (z, t) in [(1e-6, 2.0), (0.5e-6, 20.0)] {
            let a = direct.matsubara_potential(&s, z, t).unwrap();
            let b = truncated.matsubara_potential(&s, z, t).unwrap();
            assert!((a / b - 1.0).abs() < 1e-7, "z={z} T={t}: {a} vs {b}");
        }
    }

    #[test]
    fn zero_temperature_limit() {
        let m = CpModel::default();
        let s = rb();
        let u0 = m.ground_potential(&s, 1e-6).unwrap();
        let u = m.matsubara_potential(&s, 1e-6, 1e-9).unwrap();
        assert!((u / u0 - 1.0).abs() < 1e-3);
        assert_eq!(m.matsubara_potential(&s, 1e-6, 0.0).unwrap(), u0);
    }

    #[test]
    fn fourier_component() {
        let c4 = -14.26;
        let q = 1.2566e6;
        let w = cp_fourier_wq(c4, q, 1e-6, 1e12).unwrap();
        // π C4 q K1(q z)/z in Hz with µm units, K1(1.2566) from a 30-digit evaluation
        let expect = TAU * PI * c4 * 1.2566 * 0.398_061_707_535_178_1;
        assert!(((w - expect) / expect).abs() < 1e-12);
        assert_eq!(cp_fourier_wq(c4, q, 1e-6, 0.0).unwrap(), 0.0);
        assert!(cp_fourier_wq(c4, 0.0, 1e-6, 1.0).is_err());
        assert!(cp_fourier_wq(c4, q, 0.0, 1.0).is_err());
    }

    #[test]
    fn fourier_small_argument() {
        // K1(x) → 1/x, so ω → 2π·π C4 n0 / z²
        let (c4, q, z, n0) = (-14.26, 1e2, 1e-6, 1e12);
        let w = cp_fourier_wq(c4, q, z, n0).unwrap();
        let lead = TAU * PI * c4 * 1e-24 * n0 / (z * z);
        assert!(((w - lead) / lead).abs() < 1e-6);
    }
}
