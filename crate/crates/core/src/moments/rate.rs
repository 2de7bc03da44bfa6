use nalgebra::SMatrix;

use super::closed::{check_omega, unpack, CubicFrequencies};
use super::steady_state_closed;
use super::system::{k, MomentSystem, M, N};
use crate::effective::EffectiveParams;
use crate::error::{Error, Result};

/// m(t) = amplitude_a · exp(−gamma_eff · t) + m_ss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingFit {
    pub amplitude_a: f64,
    /// Positive values mean cooling (1/s).
    pub gamma_eff: f64,
    pub m_ss: f64,
}

impl CoolingFit {
    pub fn m_at(&self, t: f64) -> f64 {
        self.amplitude_a * (-self.gamma_eff * t).exp() + self.m_ss
    }

    pub fn is_stable(&self) -> bool {
        self.gamma_eff > 0.0
    }
}

/// Adiabatic cooling rate and decay amplitude for initial occupation `m0`.
///
/// The published rate and amplitude describe `m(t) = a e^{+γ t} + m_SS`;
/// both are negated here so that a positive `gamma_eff` means cooling.
pub fn cooling_rate(params: &EffectiveParams, m0: f64) -> Result<CoolingFit> {
    let (g, w, gam, nu, a) = unpack(params);
    check_omega(w)?;
    let la3 = CubicFrequencies::checked(params)?.lambda_cubed;

    let g2 = g * g;
    let w2 = w * w;
    let gam2 = gam * gam;
    let gam4 = gam2 * gam2;
    let nu2 = nu * nu;
    let nu4 = nu2 * nu2;

    let rate_den = 32.0
        * g2
        * w
        * a
        * (8.0 * g2 * w * a * (gam2 - 3.0 * nu2 + w2)
            + nu * (gam4 + 5.0 * w2 * (gam2 - 2.0 * nu2) - gam2 * nu2 + 4.0 * nu4 + 4.0 * w2 * w2))
        + nu2 * (gam2 + w2) * (gam4 + 8.0 * gam2 * (nu2 + w2) + 16.0 * (nu2 - w2).powi(2));
    if rate_den == 0.0 || !rate_den.is_finite() {
        return Err(Error::Singular("cooling-rate denominator vanishes".into()));
    }
    let growth = 64.0 * gam * g2 * la3 * nu2 * w * a / rate_den;

    let amp_den = 16.0
        * (g2 * w * a * a * (25.0 * gam2 * nu + 144.0 * a * g2 * w + 52.0 * nu * w2)
            + a * nu2 * (gam2 + w2) * (gam2 + 4.0 * w2));
    if amp_den == 0.0 || !amp_den.is_finite() {
        return Err(Error::Singular("amplitude denominator vanishes".into()));
    }
    let amp = published_amplitude(g, w, gam, nu, a, m0) / amp_den;

    Ok(CoolingFit {
        amplitude_a: -amp,
        gamma_eff: -growth,
        m_ss: steady_state_closed(params)?.m_ss,
    })
}

// numerator of the published amplitude, including its 1/(νω) prefactor
fn published_amplitude(g: f64, w: f64, gam: f64, nu: f64, a: f64, m0: f64) -> f64 {
    let mm = 2.0 * m0 + 1.0;
    let g2 = g * g;
    let w2 = w * w;
    let gam2 = gam * gam;
    let gam4 = gam2 * gam2;
    let nu2 = nu * nu;
    let a2 = a * a;
    (32.0 * g2 * g2 * w2 * a2 * a2 * (gam2 + 4.0 * (3.0 * nu2 + w2))
        + 16.0
            * g2
            * w
            * a2
            * a
            * (gam4 * nu + 2.0 * gam2 * (8.0 * g2 * w + 2.0 * nu2 * nu + nu * w2)
                - 8.0
                    * w
                    * (g2 * (-6.0 * nu2 + 9.0 * nu * mm * w - 2.0 * w2) - nu2 * nu * w
                        + nu * w2 * w))
        + a * nu2 * (gam2 + w2) * (gam2 + 4.0 * w2) * (gam2 + 4.0 * (nu2 - 2.0 * nu * mm * w + w2))
        + 2.0
            * nu
            * w
            * a2
            * (gam2 * nu * w * (7.0 * gam2 + 12.0 * nu2 - 20.0 * w2)
                + 4.0
                    * g2
                    * (4.0 * gam4
                        + gam2 * (14.0 * nu2 - 25.0 * mm * nu * w + 20.0 * w2)
                        + 4.0 * w2 * (8.0 * nu2 - 13.0 * mm * nu * w + 4.0 * w2))))
        / (nu * w)
}

const SLOW_BLOCK: [usize; 10] = [N, M, k(5), k(6), k(7), k(8), k(9), k(10), k(11), k(12)];

/// Real eigenvalue closest to zero among the modes that carry `m`.
///
/// A is block triangular: k1..k4 evolve on their own, so the flexural
/// occupation only sees the spectrum of the (n, m, k5..k12) block. Returns
/// `None` if that block has no real eigenvalue.
pub fn slow_eigenvalue(system: &MomentSystem) -> Option<f64> {
    let sub =
        SMatrix::<f64, 10, 10>::from_fn(|i, j| system.matrix_a[(SLOW_BLOCK[i], SLOW_BLOCK[j])]);
    let tol = 1e-6 * system.params.nu.abs();
    sub.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() < tol)
        .map(|z| z.re)
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
}

/// Largest real part over the full spectrum of A; negative means every mode
/// decays.
pub fn spectral_abscissa(system: &MomentSystem) -> f64 {
    system
        .matrix_a
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}
