use nalgebra::SMatrix;

use super::rate::spectral_abscissa;
use super::steady_state_linear;
use super::system::{MomentState, MomentSystem, Vec14};
use crate::error::{domain, Result};

/// States of the moment system on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<MomentState>,
    /// Set when A has a growing mode or a state is no longer finite.
    pub diverged: bool,
}

impl Trajectory {
    pub fn m(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.m).collect()
    }
}

pub(crate) fn check_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(domain(
            "evolve",
            "time grid must be finite and non-negative",
        ));
    }
    if t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain("evolve", "time grid must be sorted"));
    }
    Ok(())
}

/// Exact propagation `x(t) = x_ss + e^{At} (x0 − x_ss)`.
///
/// When A is singular the inhomogeneous term is carried by the augmented
/// generator `[[A, b], [0, 0]]` instead.
pub fn evolve(system: &MomentSystem, x0: &MomentState, t_grid: &[f64]) -> Result<Trajectory> {
    check_grid(t_grid)?;
    let x0 = x0.to_vector();
    let a = &system.matrix_a;
    let propagate: Box<dyn Fn(f64) -> Vec14> = match steady_state_linear(system) {
        Ok(ss) => {
            let x_ss = ss.as_state().to_vector();
            let d0 = x0 - x_ss;
            Box::new(move |t| x_ss + (a * t).exp() * d0)
        }
        Err(_) => {
            let mut gen = SMatrix::<f64, 15, 15>::zeros();
            gen.fixed_view_mut::<14, 14>(0, 0).copy_from(a);
            gen.fixed_view_mut::<14, 1>(0, 14)
                .copy_from(&system.vector_b);
            let mut y0 = nalgebra::SVector::<f64, 15>::zeros();
            y0.fixed_rows_mut::<14>(0).copy_from(&x0);
            y0[14] = 1.0;
            Box::new(move |t| ((gen * t).exp() * y0).fixed_rows::<14>(0).into_owned())
        }
    };
    let mut diverged = spectral_abscissa(system) > 0.0;
    let mut states = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let x = propagate(t);
        diverged |= !x.iter().all(|v| v.is_finite());
        states.push(MomentState::from_vector(&x));
    }
    Ok(Trajectory {
        times: t_grid.to_vec(),
        states,
        diverged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::EffectiveParams;
    use crate::moments::build_system;

    fn stable() -> EffectiveParams {
        let (g, w, gam, nu, a2): (f64, f64, f64, f64, f64) =
            (-7.951907e4, -3.846129e6, 9.842000e5, 2.392063e6, 6.114106);
        let xi = (a2 * (w * w + gam * gam / 4.0)).sqrt();
        EffectiveParams::from_reduced(w, xi, g, gam, nu).unwrap()
    }

    #[test]
    fn fixed_point_is_constant() {
        let sys = build_system(&stable());
        let ss = steady_state_linear(&sys).unwrap().as_state();
        let tr = evolve(&sys, &ss, &[0.0, 1e-3, 0.1, 1.0]).unwrap();
        assert!(!tr.diverged);
        for s in &tr.states {
            let d = (s.to_vector() - ss.to_vector()).amax();
            assert!(d <= 1e-8 * ss.to_vector().amax(), "{d}");
        }
    }

    #[test]
    fn relaxes_to_steady_state() {
        let sys = build_system(&stable());
        let ss = steady_state_linear(&sys).unwrap();
        let tr = evolve(&sys, &MomentState::thermal(100.0), &[0.0, 1.0, 10.0]).unwrap();
        assert_eq!(tr.states[0].m, 100.0);
        assert!((tr.states[2].m - ss.m_ss).abs() < 1e-6 * 100.0);
    }

    #[test]
    fn singular_generator_uses_augmented_form() {
        let p = EffectiveParams {
            g_coupling: 0.0,
            ..stable()
        };
        let sys = build_system(&p);
        assert!(steady_state_linear(&sys).is_err());
        let tr = evolve(&sys, &MomentState::thermal(7.0), &[0.0, 0.5]).unwrap();
        assert_eq!(tr.states[1].m, 7.0);
        // k3 relaxes to −2γ²|α|²/(γ² + 4ω²), independent of the flexural mode
        let (w, gam, a) = (p.omega, p.gamma_cool, p.alpha_sq());
        let expected = -2.0 * gam * gam * a / (gam * gam + 4.0 * w * w);
        assert!(
            (tr.states[1].k[2] / expected - 1.0).abs() < 1e-8,
            "{} vs {expected}",
            tr.states[1].k[2]
        );
    }

    #[test]
    fn rejects_bad_grid() {
        let sys = build_system(&stable());
        let x0 = MomentState::default();
        assert!(evolve(&sys, &x0, &[1.0, 0.5]).is_err());
        assert!(evolve(&sys, &x0, &[-1.0]).is_err());
    }
}
