//! Pointwise checks of the symmetry algebras.
//!
//! Oscillator: `{𝐈, J} = 2i𝐈`, `{𝐈̄, 𝐈} = 4i(α²J + εJH/R₀² − J³/(2R₀⁴))`.
//! Coulomb system: `{𝐀, J_C} = i𝐀`, `{𝐀̄, 𝐀} = −4i(H_C + J_C²/r₀²)J_C`.

use num_complex::Complex64;

use super::hamiltonians::{angular_momentum, AngularMomentum, HiddenInvariant, RungeLenz};
use super::observable::{poisson_bracket, Conj, FiniteDifference, Observable};
use super::phase::PlanarPoint;
use super::{coulomb_hamiltonian, osc_hamiltonian};
use crate::error::Result;
use crate::geometry::SpaceParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// How gradients entering the brackets are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientMode {
    Analytic,
    FiniteDifference,
}

fn bracket<F, G>(mode: GradientMode, f: &F, g: &G, p: &PlanarPoint) -> Complex64
where
    F: Observable<1>,
    G: Observable<1>,
{
    match mode {
        GradientMode::Analytic => poisson_bracket(f, g, p),
        GradientMode::FiniteDifference => poisson_bracket(&FiniteDifference(f), &FiniteDifference(g), p),
    }
}

/// Absolute residuals of the two relations of an algebra at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraResidual {
    /// `|{𝐈, J} − 2i𝐈|` resp. `|{𝐀, J_C} − i𝐀|`
    pub with_rotation: f64,
    /// `|{𝐈̄, 𝐈} − …|` resp. `|{𝐀̄, 𝐀} − …|`
    pub conjugate_pair: f64,
}

impl AlgebraResidual {
    pub fn max(&self) -> f64 {
        self.with_rotation.max(self.conjugate_pair)
    }
}

pub fn cubic_algebra_residual(p: &PlanarPoint, params: &SpaceParams, mode: GradientMode) -> Result<AlgebraResidual> {
    let h = osc_hamiltonian(p, params)?;
    let iv = HiddenInvariant { params: *params };
    let value = iv.value(p);
    let j = angular_momentum(p);
    let (alpha, r, eps) = (params.coupling, params.radius, params.epsilon());
    let cubic = alpha * alpha * j + eps * j * h / (r * r) - j.powi(3) / (2.0 * r.powi(4));
    Ok(AlgebraResidual {
        with_rotation: (bracket(mode, &iv, &AngularMomentum, p) - 2.0 * I * value).norm(),
        conjugate_pair: (bracket(mode, &Conj(iv), &iv, p) - 4.0 * I * cubic).norm(),
    })
}

pub fn coulomb_algebra_residual(p: &PlanarPoint, params: &SpaceParams, mode: GradientMode) -> Result<AlgebraResidual> {
    let h = coulomb_hamiltonian(p, params)?;
    let a = RungeLenz { params: *params };
    let value = a.value(p);
    let j = angular_momentum(p);
    let r0 = params.radius;
    Ok(AlgebraResidual {
        with_rotation: (bracket(mode, &a, &AngularMomentum, p) - I * value).norm(),
        conjugate_pair: (bracket(mode, &Conj(a), &a, p) + 4.0 * I * (h + j * j / (r0 * r0)) * j).norm(),
    })
}

/// `(1−(zz̄)²)²ππ̄/(2R₀⁴) + 2(α² + εE/R₀²)zz̄ − (E/R₀²)(1+(zz̄)²)`, which
/// vanishes on `H_osc = energy`.
pub fn energy_surface_residual(p: &PlanarPoint, energy: f64, params: &SpaceParams) -> f64 {
    let (alpha, r, eps) = (params.coupling, params.radius, params.epsilon());
    let rho = p.z_norm_sq();
    let r2 = r * r;
    (1.0 - rho * rho).powi(2) * p.pi_norm_sq() / (2.0 * r2 * r2) + 2.0 * (alpha * alpha + eps * energy / r2) * rho
        - energy / r2 * (1.0 + rho * rho)
}
