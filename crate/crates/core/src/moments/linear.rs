//! Steady state by direct solution of `A x + b = 0`.
//!
//! Parameter sets near the edge of the stable region give condition numbers
//! up to ~1e10, so the LU solution is refined with residuals accumulated in
//! twice the working precision (Ogita-Rump-Oishi Dot2).

use super::closed::CubicFrequencies;
use super::system::{MomentSystem, Vec14, M, N};
use super::{MomentState, SteadyState};
use crate::error::{Error, Result};

const REFINEMENT_STEPS: usize = 3;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `−b − A x`, each row accumulated with compensated summation.
fn residual(system: &MomentSystem, x: &Vec14) -> Vec14 {
    let a = &system.matrix_a;
    Vec14::from_fn(|i, _| {
        let mut s = -system.vector_b[i];
        let mut c = 0.0;
        for j in 0..14 {
            let (p, ep) = two_prod(-a[(i, j)], x[j]);
            let (t, es) = two_sum(s, p);
            s = t;
            c += ep + es;
        }
        s + c
    })
}

fn singular(system: &MomentSystem) -> Error {
    let p = &system.params;
    if p.g_coupling == 0.0 {
        return Error::Singular("g = 0 decouples the flexural mode, m_SS is undetermined".into());
    }
    let cubic = CubicFrequencies::new(p);
    Error::Singular(format!(
        "moment matrix is singular (omega = {:e}, gamma = {:e}, g = {:e}, nu = {:e}, |alpha|^2 = {:e}, lambda^3 = {:e}, mu^3 = {:e})",
        p.omega,
        p.gamma_cool,
        p.g_coupling,
        p.nu,
        p.alpha_sq(),
        cubic.lambda_cubed,
        cubic.mu_cubed
    ))
}

pub fn steady_state_linear(system: &MomentSystem) -> Result<SteadyState> {
    let lu = system.matrix_a.lu();
    let mut x = lu
        .solve(&(-system.vector_b))
        .ok_or_else(|| singular(system))?;
    for _ in 0..REFINEMENT_STEPS {
        let r = residual(system, &x);
        match lu.solve(&r) {
            Some(d) => x += d,
            None => return Err(singular(system)),
        }
    }
    let r = residual(system, &x);
    let b_norm = system.vector_b.amax();
    if !x.iter().all(|v| v.is_finite()) || r.amax() > 1e-9 * b_norm.max(f64::MIN_POSITIVE) {
        return Err(singular(system));
    }
    let state = MomentState::from_vector(&x);
    let cubic = CubicFrequencies::new(&system.params);
    Ok(SteadyState {
        m_ss: x[M],
        n_ss: x[N],
        n_total_ss: system.params.alpha_sq() + x[N],
        k_ss: state.k,
        lambda_cubed: cubic.lambda_cubed,
        mu_cubed: cubic.mu_cubed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::EffectiveParams;
    use crate::moments::{build_system, steady_state_closed};
    use proptest::prelude::*;

    fn red() -> EffectiveParams {
        let tau = std::f64::consts::TAU;
        let xi = tau * 172_394.0;
        EffectiveParams::from_reduced(
            tau * -42_619.5,
            xi,
            -tau * 47.7e3,
            tau * 7_266.5,
            tau * 2.7e6,
        )
        .unwrap()
    }

    #[test]
    fn compensated_residual_is_exact_for_representable_data() {
        let s = build_system(&red());
        let x = steady_state_linear(&s).unwrap().as_state().to_vector();
        let r = residual(&s, &x);
        assert!(r.amax() <= 1e-12 * s.vector_b.amax());
    }

    #[test]
    fn two_sum_recovers_rounding() {
        let (s, e) = two_sum(1.0, 1e-17);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-17);
        let (p, e) = two_prod(1.0 + f64::EPSILON, 1.0 - f64::EPSILON);
        assert_eq!(p + e, p);
        assert_eq!(e, -f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn structural_zeros() {
        let ss = steady_state_linear(&build_system(&red())).unwrap();
        let scale = ss.k_ss.iter().fold(ss.m_ss.abs(), |m, v| m.max(v.abs()));
        for i in [2, 6, 10] {
            assert!(ss.k(i).abs() < 1e-9 * scale, "k{i} = {}", ss.k(i));
        }
    }

    #[test]
    fn uncoupled_system_is_singular() {
        let p = EffectiveParams {
            g_coupling: 0.0,
            ..red()
        };
        match steady_state_linear(&build_system(&p)) {
            Err(Error::Singular(msg)) => assert!(msg.contains("g = 0")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn weak_coupling_limit() {
        let base = red();
        let p = EffectiveParams::from_reduced(
            base.omega,
            base.xi_drive,
            1e-6 * base.nu,
            base.gamma_cool,
            base.nu,
        )
        .unwrap();
        let lin = steady_state_linear(&build_system(&p)).unwrap();
        let closed = steady_state_closed(&p).unwrap();
        assert!(
            (lin.m_ss / closed.m_ss - 1.0).abs() < 1e-9,
            "{} vs {}",
            lin.m_ss,
            closed.m_ss
        );
    }

    proptest! {
        #[test]
        fn residual_bound(s in 0.1f64..10.0, gscale in 0.1f64..10.0) {
            let base = red();
            let p = EffectiveParams::from_reduced(
                base.omega * s, base.xi_drive * s, base.g_coupling * gscale, base.gamma_cool * s, base.nu,
            ).unwrap();
            let sys = build_system(&p);
            if let Ok(ss) = steady_state_linear(&sys) {
                let x = ss.as_state().to_vector();
                let r = sys.rhs(&x);
                prop_assert!(r.amax() <= 1e-9 * sys.vector_b.amax());
            }
        }
    }
}
