use crate::constants::PhysicalConstants;
use crate::error::{domain, Result};

/// Bose-Einstein occupation 1/(exp(ħω/k_B T) − 1).
pub fn occupation_from_temperature(
    freq: f64,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !(freq > 0.0) {
        return Err(domain(
            "occupation_from_temperature",
            format!("frequency must be > 0, got {freq}"),
        ));
    }
    if !(temperature >= 0.0) {
        return Err(domain(
            "occupation_from_temperature",
            format!("temperature must be >= 0, got {temperature}"),
        ));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = constants.hbar * freq / (constants.k_boltzmann * temperature);
    Ok(1.0 / x.exp_m1())
}

/// Inverse of [`occupation_from_temperature`]: T = ħω / (k_B ln(1 + 1/n)).
pub fn temperature_from_occupation(
    freq: f64,
    occupation: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !(freq > 0.0) {
        return Err(domain(
            "temperature_from_occupation",
            format!("frequency must be > 0, got {freq}"),
        ));
    }
    if !(occupation >= 0.0) {
        return Err(domain(
            "temperature_from_occupation",
            format!("occupation must be >= 0, got {occupation}"),
        ));
    }
    if occupation == 0.0 {
        return Ok(0.0);
    }
    Ok(constants.hbar * freq / (constants.k_boltzmann * (1.0 / occupation).ln_1p()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    const C: PhysicalConstants = PhysicalConstants::SI;

    #[test]
    fn reference_temperatures() {
        let t = temperature_from_occupation(TAU * 2.7e6, 0.15, &C).unwrap();
        assert!((t - 63.7e-6).abs() < 0.1e-6, "{t}");
        let t = temperature_from_occupation(TAU * 477.0, 24.0, &C).unwrap();
        assert!((t / 560e-9 - 1.0).abs() < 0.03, "{t}");
    }

    #[test]
    fn room_temperature_occupation() {
        let m = occupation_from_temperature(TAU * 2.7e6, 300.0, &C).unwrap();
        let classical = C.k_boltzmann * 300.0 / (C.hbar * TAU * 2.7e6);
        assert!((m / classical - 1.0).abs() < 1e-5);
        assert!((m / 2.3e6 - 1.0).abs() < 0.02);
    }

    #[test]
    fn zero_and_domain() {
        assert_eq!(occupation_from_temperature(1e6, 0.0, &C).unwrap(), 0.0);
        assert_eq!(temperature_from_occupation(1e6, 0.0, &C).unwrap(), 0.0);
        assert!(occupation_from_temperature(1e6, -1.0, &C).is_err());
        assert!(temperature_from_occupation(1e6, -0.1, &C).is_err());
        assert!(occupation_from_temperature(0.0, 1.0, &C).is_err());
    }

    proptest! {
        #[test]
        fn mutual_inverses(log_n in -6.0f64..8.0, log_f in 2.0f64..9.0) {
            let n = 10f64.powf(log_n);
            let f = 10f64.powf(log_f);
            let t = temperature_from_occupation(f, n, &C).unwrap();
            let back = occupation_from_temperature(f, t, &C).unwrap();
            prop_assert!((back / n - 1.0).abs() < 1e-10, "n={n} back={back}");
        }
    }
}
