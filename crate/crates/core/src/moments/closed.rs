//! Stationary values in closed form.
//!
//! Two of the published expressions disagree with the equations of motion
//! and are used here in corrected form:
//!
//! - k11: the `ν(γ² − 2ω²)(2γ²νω + g²(γ² + 4ω²))` term carries the same
//!   `|α|⁴/(ωλ³µ³)` prefactor as the rest of the expression;
//! - m_SS: the constant term is `(2ν − 3ω)/(6ω)`.
//!
//! With both changes every component matches the linear solve of the
//! moment system to rounding.

use super::SteadyState;
use crate::effective::EffectiveParams;
use crate::error::{Error, Result};

/// λ³ = ν(γ² + ω²) + 9g²ω|α|² and µ³ = ν(γ² + 4ω²) + 16g²ω|α|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicFrequencies {
    pub lambda_cubed: f64,
    pub mu_cubed: f64,
}

impl CubicFrequencies {
    pub fn new(params: &EffectiveParams) -> Self {
        let (g, w, gam, nu, a) = unpack(params);
        Self {
            lambda_cubed: nu * (gam * gam + w * w) + 9.0 * g * g * w * a,
            mu_cubed: nu * (gam * gam + 4.0 * w * w) + 16.0 * g * g * w * a,
        }
    }

    /// Fails when λ³ or µ³ vanishes relative to the size of its terms.
    pub fn checked(params: &EffectiveParams) -> Result<Self> {
        let (g, w, gam, nu, a) = unpack(params);
        let c = Self::new(params);
        let coupling = (g * g * w * a).abs();
        let scale_l = (nu * (gam * gam + w * w)).abs() + 9.0 * coupling;
        let scale_m = (nu * (gam * gam + 4.0 * w * w)).abs() + 16.0 * coupling;
        if !(c.lambda_cubed.abs() > 1e-13 * scale_l) {
            return Err(Error::Singular(format!(
                "lambda^3 = nu(gamma^2 + omega^2) + 9 g^2 omega |alpha|^2 vanishes ({:e})",
                c.lambda_cubed
            )));
        }
        if !(c.mu_cubed.abs() > 1e-13 * scale_m) {
            return Err(Error::Singular(format!(
                "mu^3 = nu(gamma^2 + 4 omega^2) + 16 g^2 omega |alpha|^2 vanishes ({:e})",
                c.mu_cubed
            )));
        }
        Ok(c)
    }
}

pub(crate) fn unpack(p: &EffectiveParams) -> (f64, f64, f64, f64, f64) {
    (p.g_coupling, p.omega, p.gamma_cool, p.nu, p.alpha_sq())
}

pub(crate) fn check_omega(w: f64) -> Result<()> {
    if w == 0.0 || !w.is_finite() {
        return Err(Error::Singular(format!(
            "shifted phonon frequency omega = {w}"
        )));
    }
    Ok(())
}

pub fn steady_state_closed(params: &EffectiveParams) -> Result<SteadyState> {
    let (g, w, gam, nu, a) = unpack(params);
    check_omega(w)?;
    if g == 0.0 {
        return Err(Error::Singular(
            "g = 0 decouples the flexural mode, m_SS is undetermined".into(),
        ));
    }
    let CubicFrequencies {
        lambda_cubed: la3,
        mu_cubed: mu3,
    } = CubicFrequencies::checked(params)?;

    let g2 = g * g;
    let g4 = g2 * g2;
    let w2 = w * w;
    let w3 = w2 * w;
    let w4 = w2 * w2;
    let gam2 = gam * gam;
    let gam4 = gam2 * gam2;
    let nu2 = nu * nu;
    let nu3 = nu2 * nu;
    let nu4 = nu2 * nu2;
    let a2 = a * a;
    let a3 = a2 * a;
    let a4 = a2 * a2;
    let l = la3 * mu3;
    let p1 = (gam2 + w2) * (gam2 + 4.0 * w2);

    let k1 = -2.0 * g * a * (gam2 - 4.0 * w2) / mu3;
    let k3 = -2.0 * (gam2 * nu * a + 8.0 * g2 * w * a2) / mu3;
    let k4 = 4.0 * gam * (nu * w * a + 2.0 * g2 * a2) / mu3;

    let k5 = g / l
        * (4.0 * g2 * w * a3 * (5.0 * gam2 - 16.0 * w2)
            + 2.0 * a2 * (2.0 * gam4 * nu + gam2 * w * (8.0 * g2 - 7.0 * nu * w) + 8.0 * g2 * w3)
            + a * nu * p1);
    let k7 = gam * g / (2.0 * w * l)
        * (16.0 * g2 * w * a3 * (gam2 - 5.0 * w2)
            - 2.0 * w * a2 * (nu * w * (8.0 * w2 - gam2) + 8.0 * g2 * (gam2 + w2))
            - a * nu * p1);
    let k8 = g / (w * l)
        * (96.0 * g4 * w2 * a4
            + 2.0 * nu * w * a2 * (3.0 * gam2 * nu * w + 2.0 * g2 * (7.0 * gam2 + 16.0 * w2))
            + 16.0 * g2 * w * a3 * (gam2 * nu + 2.0 * w * (6.0 * g2 + nu * w))
            + a * nu2 * p1);
    let k9 = -2.0 * g2 / (nu * l)
        * (2.0 * g2 * w * a3 * (gam2 + 4.0 * w2)
            + 2.0
                * a2
                * (gam4 * nu - 4.0 * gam2 * w * (nu * w - 2.0 * g2)
                    + 4.0 * w3 * (2.0 * g2 + nu * w))
            + a * nu * p1);
    let k11 = a2 / (w * l)
        * (-16.0 * g4 * w * a2 * (gam2 - 8.0 * w2)
            + 16.0 * a * g2 * w * (gam2 * nu * w + g2 * (gam2 - 2.0 * w2))
            + nu * (gam2 - 2.0 * w2) * (2.0 * gam2 * nu * w + g2 * (gam2 + 4.0 * w2)));
    let k12 = -gam * a2 / l
        * (96.0 * g4 * w * a2
            + 16.0 * a * g2 * (gam2 * nu + w * (3.0 * g2 + 2.0 * nu * w))
            + 3.0 * nu * (2.0 * gam2 * nu * w + g2 * (gam2 + 4.0 * w2)));

    let n_ss = -(-2.0 * gam4 * nu2 * w * a - 2.0 * gam2 * nu2 * w3 * a - 16.0 * gam2 * g4 * w * a3
        + 16.0 * gam2 * g4 * w * a2
        - 64.0 * g4 * w3 * a3)
        / (2.0 * w * l)
        - (16.0 * g4 * w3 * a2 + gam4 * g2 * nu * a - 36.0 * gam2 * g2 * nu * w2 * a2
            + 5.0 * gam2 * g2 * nu * w2 * a
            + 4.0 * g2 * nu * w4 * a)
            / (2.0 * w * l);

    // the 1/g of the third term cancels against its g(γ² − 4ω²)|α|² factor
    let m_ss = -(gam2 + w2) * (-48.0 * g2 * w * a - 3.0 * gam2 * nu + 4.0 * nu3 - 12.0 * nu * w2)
        / (48.0 * nu * w * la3)
        + a * (16.0 * gam2 * g2 * w * a + 48.0 * g2 * nu2 * w * a - 32.0 * g2 * w3 * a
            + gam4 * nu
            + 4.0 * gam2 * nu3
            + 2.0 * gam2 * nu * w2
            + 8.0 * nu3 * w2
            - 8.0 * nu * w4)
            / (32.0 * nu * w * la3)
        + a * (gam2 - 4.0 * w2)
            * (-192.0 * g4 * w2 * a2 + 16.0 * g2 * nu3 * w * a - gam4 * nu2 - 4.0 * gam2 * nu4
                + 18.0 * gam2 * nu2 * w2
                + 8.0 * nu4 * w2
                - 8.0 * nu2 * w4)
            / (32.0 * nu * w * l)
        + (2.0 * nu - 3.0 * w) / (6.0 * w);

    Ok(SteadyState {
        m_ss,
        n_ss,
        n_total_ss: a + n_ss,
        k_ss: [k1, 0.0, k3, k4, k5, 0.0, k7, k8, k9, 0.0, k11, k12],
        lambda_cubed: la3,
        mu_cubed: mu3,
    })
}
