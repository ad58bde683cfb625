//! Stereographic parametrization of spheres and two-sheeted hyperboloids.
//!
//! A point of the `d`-dimensional sphere (`ε = +1`) or pseudosphere
//! (`ε = −1`) of radius `R₀` is described by a stereographic coordinate
//! `z ∈ ℝᵈ` (complex components are split into real and imaginary parts).
//! The ambient embedding is
//!
//! ```text
//! x      = R₀ · 2z / (1 + ε z z̄)
//! x_last = R₀ · (1 − ε z z̄) / (1 + ε z z̄)
//! ```
//!
//! with `ε x² + x_last² = R₀²`. The origin maps to `x_last = +R₀`. The unit
//! disk `|z| < 1` and its outside are exchanged by `z → 1/z`; in the flat
//! limit `R₀ → ∞` the disk becomes the whole plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::{AMBIENT_CONSTRAINT, BOUNDARY_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Curvature {
    Sphere,
    Pseudosphere,
}

impl Curvature {
    pub fn sign(self) -> f64 {
        match self {
            Curvature::Sphere => 1.0,
            Curvature::Pseudosphere => -1.0,
        }
    }

    pub fn from_sign(eps: i32) -> Result<Self> {
        match eps {
            1 => Ok(Curvature::Sphere),
            -1 => Ok(Curvature::Pseudosphere),
            other => Err(Error::param("epsilon", format!("must be +1 or -1, got {other}"))),
        }
    }
}

/// Configuration of one system: curvature sign, radius and coupling.
///
/// For oscillators `radius` is `R₀` and `coupling` is `α`; for Coulomb-type
/// systems `radius` is `r₀` and `coupling` is `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    pub curvature: Curvature,
    pub radius: f64,
    pub coupling: f64,
    pub dim: usize,
}

impl SpaceParams {
    fn checked(curvature: Curvature, radius: f64, coupling: f64, dim: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::param("radius", format!("must be positive and finite, got {radius}")));
        }
        if !(coupling.is_finite() && coupling >= 0.0) {
            return Err(Error::param("coupling", format!("must be non-negative and finite, got {coupling}")));
        }
        Ok(Self { curvature, radius, coupling, dim })
    }

    /// Oscillator on a sphere or pseudosphere of dimension 2 or 4.
    pub fn oscillator(curvature: Curvature, radius: f64, alpha: f64, dim: usize) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::param("dim", format!("oscillator dimension must be 2 or 4, got {dim}")));
        }
        Self::checked(curvature, radius, alpha, dim)
    }

    /// Coulomb-type system; these only live on the pseudosphere.
    pub fn coulomb(r0: f64, gamma: f64, dim: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::param("dim", format!("Coulomb dimension must be 2 or 3, got {dim}")));
        }
        Self::checked(Curvature::Pseudosphere, r0, gamma, dim)
    }

    pub fn epsilon(&self) -> f64 {
        self.curvature.sign()
    }
}

/// Point of the ambient (pseudo-)Euclidean space `ℝ^{d+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint {
    pub x: Vec<f64>,
    pub x_last: f64,
}

impl AmbientPoint {
    pub fn x_norm_sq(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum()
    }

    /// `ε x² + x_last²`, which equals `R₀²` on the surface.
    pub fn quadratic_form(&self, curvature: Curvature) -> f64 {
        curvature.sign() * self.x_norm_sq() + self.x_last * self.x_last
    }

    /// Relative violation of the surface constraint.
    pub fn constraint_residual(&self, params: &SpaceParams) -> f64 {
        let r2 = params.radius * params.radius;
        let scale = r2.max(self.x_norm_sq()).max(self.x_last * self.x_last);
        (self.quadratic_form(params.curvature) - r2).abs() / scale
    }
}

fn check_domain(norm_sq: f64, params: &SpaceParams, guard: f64) -> Result<f64> {
    let denom = 1.0 + params.epsilon() * norm_sq;
    if params.curvature == Curvature::Pseudosphere && (norm_sq - 1.0).abs() < guard {
        return Err(Error::Boundary { distance: (norm_sq - 1.0).abs() });
    }
    Ok(denom)
}

/// Ambient image of a real stereographic coordinate vector.
pub fn stereo_to_ambient_real(u: &[f64], params: &SpaceParams) -> Result<AmbientPoint> {
    stereo_to_ambient_real_guarded(u, params, BOUNDARY_GUARD)
}

pub fn stereo_to_ambient_real_guarded(u: &[f64], params: &SpaceParams, guard: f64) -> Result<AmbientPoint> {
    let norm_sq: f64 = u.iter().map(|v| v * v).sum();
    let denom = check_domain(norm_sq, params, guard)?;
    let r = params.radius;
    let x = u.iter().map(|v| r * 2.0 * v / denom).collect();
    let x_last = r * (1.0 - params.epsilon() * norm_sq) / denom;
    Ok(AmbientPoint { x, x_last })
}

/// Ambient image of complex stereographic coordinates.
///
/// The Euclidean part is laid out as `(Re z¹, Im z¹, Re z², Im z², …)`, so
/// that `x₁ + i x₂ = R₀ · 2z¹/(1 + ε z z̄)`.
pub fn stereo_to_ambient(z: &[Complex64], params: &SpaceParams) -> Result<AmbientPoint> {
    let real: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
    stereo_to_ambient_real(&real, params)
}

/// Conformal factor of the Kähler metric, `ds² = factor · dz dz̄`.
pub fn metric_conformal_factor(z: &[Complex64], params: &SpaceParams) -> Result<f64> {
    let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let denom = check_domain(norm_sq, params, BOUNDARY_GUARD)?;
    Ok(4.0 * params.radius * params.radius / (denom * denom))
}

/// The inversion `z → 1/z` exchanging the two hemispheres (sheets).
pub fn inversion(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("inversion is undefined at z = 0".into()));
    }
    Ok(z.inv())
}

/// Checks the ambient constraint to [`AMBIENT_CONSTRAINT`].
pub fn on_surface(point: &AmbientPoint, params: &SpaceParams) -> bool {
    point.constraint_residual(params) <= AMBIENT_CONSTRAINT
}
