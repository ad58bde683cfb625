//! Reduced potentials evaluated in ambient coordinates of the pseudosphere
//! `x_last² − x² = r₀²`.

use crate::error::{Error, Result};
use crate::tolerances::PSEUDOSPHERE_MEMBERSHIP;

fn check_membership(x: &[f64], x_last: f64, r0: f64) -> Result<f64> {
    if r0.is_nan() || r0 <= 0.0 {
        return Err(Error::param("r0", format!("must be positive, got {r0}")));
    }
    let x2: f64 = x.iter().map(|c| c * c).sum();
    let residual = (x_last * x_last - x2 - r0 * r0) / (r0 * r0);
    if residual.abs() > PSEUDOSPHERE_MEMBERSHIP {
        return Err(Error::Domain(format!("point is off the pseudosphere (relative residual {residual:e})")));
    }
    if x2 == 0.0 {
        return Err(Error::Domain("the potential is singular at x = 0".into()));
    }
    Ok(x2)
}

/// `(s²/r₀²)(x₄²/(2x²) − 2) − (γ/r₀) x₄/|x|`.
pub fn mic_potential_ambient(x: &[f64; 3], x4: f64, s: f64, gamma: f64, r0: f64) -> Result<f64> {
    let x2 = check_membership(x, x4, r0)?;
    Ok(s * s / (r0 * r0) * (x4 * x4 / (2.0 * x2) - 2.0) - gamma / r0 * x4 / x2.sqrt())
}

/// `(j(j+1)/r₀²)(x₆²/(2x²) − 2) − (γ/r₀) x₆/(2|x|)`.
pub fn su2_potential_ambient(x: &[f64; 5], x6: f64, j: f64, gamma: f64, r0: f64) -> Result<f64> {
    let x2 = check_membership(x, x6, r0)?;
    Ok(j * (j + 1.0) / (r0 * r0) * (x6 * x6 / (2.0 * x2) - 2.0) - gamma / r0 * x6 / (2.0 * x2.sqrt()))
}

/// Ambient point over the stereographic coordinate `u` (`|u| < 1`, upper sheet).
pub fn pseudosphere_point<const D: usize>(u: &[f64; D], r0: f64) -> ([f64; D], f64) {
    let u2: f64 = u.iter().map(|c| c * c).sum();
    let x = u.map(|c| r0 * 2.0 * c / (1.0 - u2));
    (x, r0 * (1.0 + u2) / (1.0 - u2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::ks::{mic_energy, ReducedPoint};
    use crate::sampling::PhaseSampler;

    #[test]
    fn hand_evaluated_point() {
        let v = mic_potential_ambient(&[4.0 / 3.0, 0.0, 0.0], 5.0 / 3.0, 1.0, 0.0, 1.0).unwrap();
        assert!((v - (25.0 / 32.0 - 2.0)).abs() < 1e-15);
    }

    #[test]
    fn zero_charge_is_coulomb() {
        let (x, x4) = pseudosphere_point(&[0.2, -0.1, 0.3], 2.0);
        let x_norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        let v = mic_potential_ambient(&x, x4, 0.0, 1.5, 2.0).unwrap();
        assert!((v + 1.5 / 2.0 * x4 / x_norm).abs() < 1e-14);
        let (x5, x6) = pseudosphere_point(&[0.2, -0.1, 0.3, 0.0, 0.1], 2.0);
        let n5 = x5.iter().map(|c| c * c).sum::<f64>().sqrt();
        let v = su2_potential_ambient(&x5, x6, 0.0, 1.5, 2.0).unwrap();
        assert!((v + 1.5 / 2.0 * x6 / (2.0 * n5)).abs() < 1e-14);
    }

    #[test]
    fn attractive_singularity() {
        let mut last = f64::INFINITY;
        for k in 1..8 {
            let (x, x4) = pseudosphere_point(&[10f64.powi(-k), 0.0, 0.0], 1.0);
            let v = mic_potential_ambient(&x, x4, 0.0, 1.0, 1.0).unwrap();
            assert!(v < last);
            last = v;
        }
        assert!(last < -1e6);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(mic_potential_ambient(&[1.0, 0.0, 0.0], 1.0, 0.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(mic_potential_ambient(&[0.0; 3], 1.0, 0.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(su2_potential_ambient(&[0.0; 5], 2.0, 0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn su2_matches_mic_shape() {
        // s² ↦ j(j+1), Coulomb coefficient halved
        let (x, x4) = pseudosphere_point(&[0.3, 0.2, -0.4], 1.7);
        let x5 = [x[0], x[1], x[2], 0.0, 0.0];
        let j = 1.5;
        let mic_charge = mic_potential_ambient(&x, x4, (j * (j + 1.0_f64)).sqrt(), 0.0, 1.7).unwrap();
        let mic_coulomb = mic_potential_ambient(&x, x4, 0.0, 0.9, 1.7).unwrap();
        let su2 = su2_potential_ambient(&x5, x4, j, 0.9, 1.7).unwrap();
        assert!((su2 - (mic_charge + mic_coulomb / 2.0)).abs() < 1e-13);
    }

    #[test]
    fn homogeneity() {
        let (x, x6) = pseudosphere_point(&[0.1, 0.2, 0.3, 0.1, -0.2], 1.0);
        let lambda = 3.0;
        let xs = x.map(|c| c * lambda);
        let a = su2_potential_ambient(&x, x6, 1.0, 0.0, 1.0).unwrap();
        let b = su2_potential_ambient(&xs, lambda * x6, 1.0, 0.0, lambda).unwrap();
        assert!((b - a / (lambda * lambda)).abs() < 1e-14);
    }

    #[test]
    fn ambient_potential_is_surface_potential_minus_constant() {
        // the surface kinetic-like term s²(1−u²)²/(8r₀²u²) differs from the
        // ambient charge term by 3s²/(2r₀²)
        let mut rng = PhaseSampler::new(21);
        for _ in 0..200 {
            let u = [rng.uniform(-0.55, 0.55), rng.uniform(-0.55, 0.55), rng.uniform(-0.55, 0.55)];
            let (s, gamma, r0) = (rng.uniform(-2.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.5, 3.0));
            let r = ReducedPoint { u, p: [0.0; 3], s };
            let (x, x4) = pseudosphere_point(&u, r0);
            let ambient = mic_potential_ambient(&x, x4, s, gamma, r0).unwrap();
            let surface = mic_energy(&r, r0, gamma);
            assert!((ambient - (surface - 1.5 * s * s / (r0 * r0))).abs() < 1e-11 * ambient.abs().max(1.0));
        }
    }
}
