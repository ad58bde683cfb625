//! Hamiltonians and conserved quantities in stereographic coordinates.
//!
//! Oscillator (any `N`, with `ρ = z z̄`, `K = π π̄`):
//!
//! ```text
//! H = (1 + ερ)² K / (2R₀²) + 2α²R₀² ρ / (1 − ερ)²
//! ```
//!
//! Planar Coulomb system on the pseudosphere in variables `(w, p)`:
//!
//! ```text
//! H_C = (1 − w w̄)² p p̄ / (2r₀²) − (γ/r₀)(1 + w w̄)/(2|w|)
//! ```
//!
//! The rotation generators are `𝐉 = π + ε z̄² π̄` and `J = i(zπ − z̄π̄)`; the
//! hidden invariants are the complex vector `𝐈` of the oscillator and the
//! Runge-Lenz vector `𝐀` of the Coulomb system.

use num_complex::Complex64;

use super::observable::{Gradient, Observable};
use super::phase::{PhasePoint, PlanarPoint};
use crate::error::{Error, Result};
use crate::geometry::{stereo_to_ambient, Curvature, SpaceParams};
use crate::tolerances::BOUNDARY_GUARD;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn require_pseudosphere(params: &SpaceParams) -> Result<()> {
    if params.curvature != Curvature::Pseudosphere {
        return Err(Error::param("epsilon", "Coulomb-type systems live on the pseudosphere (epsilon = -1)"));
    }
    Ok(())
}

/// Rejects points where `1 − ερ` or `1 + ερ` vanishes.
fn oscillator_domain(rho: f64, params: &SpaceParams) -> Result<()> {
    let eps = params.epsilon();
    if (1.0 - eps * rho).abs() < BOUNDARY_GUARD {
        return Err(Error::Singularity(format!("potential diverges at z z̄ = {rho} (epsilon = +1)")));
    }
    if (1.0 + eps * rho).abs() < BOUNDARY_GUARD {
        return Err(Error::Boundary { distance: (rho - 1.0).abs() });
    }
    Ok(())
}

fn coulomb_domain(rho: f64) -> Result<()> {
    if rho.sqrt() < BOUNDARY_GUARD {
        return Err(Error::Singularity("Coulomb center w = 0".into()));
    }
    if (1.0 - rho).abs() < BOUNDARY_GUARD {
        return Err(Error::Singularity("pseudosphere boundary |w| = 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorHamiltonian {
    pub params: SpaceParams,
}

impl<const N: usize> Observable<N> for OscillatorHamiltonian {
    fn value(&self, p: &PhasePoint<N>) -> Complex64 {
        let (eps, r, alpha) = (self.params.epsilon(), self.params.radius, self.params.coupling);
        let rho = p.z_norm_sq();
        let kinetic = (1.0 + eps * rho).powi(2) * p.pi_norm_sq() / (2.0 * r * r);
        let potential = 2.0 * alpha * alpha * r * r * rho / (1.0 - eps * rho).powi(2);
        Complex64::new(kinetic + potential, 0.0)
    }

    fn gradient(&self, p: &PhasePoint<N>) -> Gradient<N> {
        let (eps, r, alpha) = (self.params.epsilon(), self.params.radius, self.params.coupling);
        let rho = p.z_norm_sq();
        let k = p.pi_norm_sq();
        let radial = eps * (1.0 + eps * rho) * k / (r * r)
            + 2.0 * alpha * alpha * r * r * (1.0 + eps * rho) / (1.0 - eps * rho).powi(3);
        let mom = (1.0 + eps * rho).powi(2) / (2.0 * r * r);
        let mut g = Gradient::zero();
        for a in 0..N {
            g.dz[a] = p.z[a].conj() * radial;
            g.dz_bar[a] = p.z[a] * radial;
            g.dpi[a] = p.pi[a].conj() * mom;
            g.dpi_bar[a] = p.pi[a] * mom;
        }
        g
    }
}

/// `J = i Σ (z^a π_a − z̄^a π̄_a)`, real.
#[derive(Debug, Clone, Copy, Default)]
pub struct AngularMomentum;

impl<const N: usize> Observable<N> for AngularMomentum {
    fn value(&self, p: &PhasePoint<N>) -> Complex64 {
        Complex64::new(angular_momentum(p), 0.0)
    }

    fn gradient(&self, p: &PhasePoint<N>) -> Gradient<N> {
        let mut g = Gradient::zero();
        for a in 0..N {
            g.dz[a] = I * p.pi[a];
            g.dz_bar[a] = -I * p.pi[a].conj();
            g.dpi[a] = I * p.z[a];
            g.dpi_bar[a] = -I * p.z[a].conj();
        }
        g
    }
}

/// `𝐉 = π + ε z̄² π̄`.
#[derive(Debug, Clone, Copy)]
pub struct RotationVector {
    pub curvature: Curvature,
}

impl Observable<1> for RotationVector {
    fn value(&self, p: &PlanarPoint) -> Complex64 {
        let eps = self.curvature.sign();
        let zb = p.z[0].conj();
        p.pi[0] + eps * zb * zb * p.pi[0].conj()
    }

    fn gradient(&self, p: &PlanarPoint) -> Gradient<1> {
        let eps = self.curvature.sign();
        let zb = p.z[0].conj();
        Gradient {
            dz: [Complex64::new(0.0, 0.0)],
            dz_bar: [2.0 * eps * zb * p.pi[0].conj()],
            dpi: [Complex64::new(1.0, 0.0)],
            dpi_bar: [eps * zb * zb],
        }
    }
}

/// Hidden invariant `𝐈 = 𝐉²/(2R₀²) + (α²R₀²/2) x̄²/x₃²` of the planar oscillator.
#[derive(Debug, Clone, Copy)]
pub struct HiddenInvariant {
    pub params: SpaceParams,
}

impl Observable<1> for HiddenInvariant {
    fn value(&self, p: &PlanarPoint) -> Complex64 {
        let (eps, r, alpha) = (self.params.epsilon(), self.params.radius, self.params.coupling);
        let jv = RotationVector { curvature: self.params.curvature }.value(p);
        let zb = p.z[0].conj();
        let rho = p.z[0].norm_sqr();
        // x̄²/x₃² = 4 z̄² / (1 − ερ)²
        jv * jv / (2.0 * r * r) + 2.0 * alpha * alpha * r * r * zb * zb / (1.0 - eps * rho).powi(2)
    }

    fn gradient(&self, p: &PlanarPoint) -> Gradient<1> {
        let (eps, r, alpha) = (self.params.epsilon(), self.params.radius, self.params.coupling);
        let rv = RotationVector { curvature: self.params.curvature };
        let jv = rv.value(p);
        let djv = rv.gradient(p);
        let zb = p.z[0].conj();
        let rho = p.z[0].norm_sqr();
        let cube = (1.0 - eps * rho).powi(3);
        let kin = jv / (r * r);
        let pot = 4.0 * alpha * alpha * r * r / cube;
        Gradient {
            dz: [kin * djv.dz[0] + pot * eps * zb * zb * zb],
            dz_bar: [kin * djv.dz_bar[0] + pot * zb],
            dpi: [kin * djv.dpi[0]],
            dpi_bar: [kin * djv.dpi_bar[0]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombHamiltonian {
    pub params: SpaceParams,
}

impl Observable<1> for CoulombHamiltonian {
    fn value(&self, p: &PlanarPoint) -> Complex64 {
        let (r0, gamma) = (self.params.radius, self.params.coupling);
        let rho = p.z[0].norm_sqr();
        let kinetic = (1.0 - rho).powi(2) * p.pi[0].norm_sqr() / (2.0 * r0 * r0);
        let potential = -gamma / r0 * (1.0 + rho) / (2.0 * rho.sqrt());
        Complex64::new(kinetic + potential, 0.0)
    }

    fn gradient(&self, p: &PlanarPoint) -> Gradient<1> {
        let (r0, gamma) = (self.params.radius, self.params.coupling);
        let w = p.z[0];
        let rho = w.norm_sqr();
        let k = p.pi[0].norm_sqr();
        let radial = (1.0 - rho) * (-k / (r0 * r0) + gamma / (4.0 * r0 * rho.powf(1.5)));
        let mom = (1.0 - rho).powi(2) / (2.0 * r0 * r0);
        Gradient {
            dz: [w.conj() * radial],
            dz_bar: [w * radial],
            dpi: [p.pi[0].conj() * mom],
            dpi_bar: [p.pi[0] * mom],
        }
    }
}

/// Runge-Lenz vector `𝐀 = −i J_C 𝐉_C / r₀ + γ x̄_C / |𝐱_C|` in `(w, p)`.
#[derive(Debug, Clone, Copy)]
pub struct RungeLenz {
    pub params: SpaceParams,
}

impl RungeLenz {
    /// `x̄_C/|𝐱_C| = sign(1 − w w̄) · w̄/|w|`.
    fn sheet_sign(rho: f64) -> f64 {
        if rho < 1.0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl Observable<1> for RungeLenz {
    fn value(&self, p: &PlanarPoint) -> Complex64 {
        let (r0, gamma) = (self.params.radius, self.params.coupling);
        let j = angular_momentum(p);
        let jv = RotationVector { curvature: Curvature::Pseudosphere }.value(p);
        let w = p.z[0];
        let rho = w.norm_sqr();
        -I * j * jv / r0 + gamma * Self::sheet_sign(rho) * w.conj() / rho.sqrt()
    }

    fn gradient(&self, p: &PlanarPoint) -> Gradient<1> {
        let (r0, gamma) = (self.params.radius, self.params.coupling);
        let (w, q) = (p.z[0], p.pi[0]);
        let (wb, qb) = (w.conj(), q.conj());
        let rho = w.norm_sqr();
        let sgn = Self::sheet_sign(rho);
        let j = angular_momentum(p);
        let jv = q - wb * wb * qb;
        let coul = gamma * sgn / (2.0 * rho.sqrt());
        Gradient {
            dz: [q * jv / r0 - coul * wb * wb / rho],
            dz_bar: [-qb * jv / r0 + 2.0 * I * j * wb * qb / r0 + coul],
            dpi: [w * jv / r0 - I * j / r0],
            dpi_bar: [-wb * jv / r0 + I * j * wb * wb / r0],
        }
    }
}

/// `J = i Σ (z^a π_a − z̄^a π̄_a) = −2 Σ Im(z^a π_a)`.
pub fn angular_momentum<const N: usize>(p: &PhasePoint<N>) -> f64 {
    -2.0 * p.z.iter().zip(&p.pi).map(|(z, pi)| (z * pi).im).sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationGenerators {
    /// `𝐉 = π + ε z̄² π̄`
    pub vector: Complex64,
    /// `J = i(zπ − z̄π̄)`
    pub scalar: f64,
}

pub fn rotation_generators(p: &PlanarPoint, curvature: Curvature) -> RotationGenerators {
    RotationGenerators { vector: RotationVector { curvature }.value(p), scalar: angular_momentum(p) }
}

pub fn osc_hamiltonian<const N: usize>(p: &PhasePoint<N>, params: &SpaceParams) -> Result<f64> {
    oscillator_domain(p.z_norm_sq(), params)?;
    Ok(OscillatorHamiltonian { params: *params }.value(p).re)
}

pub fn coulomb_hamiltonian(p: &PlanarPoint, params: &SpaceParams) -> Result<f64> {
    require_pseudosphere(params)?;
    coulomb_domain(p.z[0].norm_sqr())?;
    Ok(CoulombHamiltonian { params: *params }.value(p).re)
}

/// `𝐈`, evaluated through the ambient coordinates `x̄`, `x₃`.
pub fn hidden_invariant(p: &PlanarPoint, params: &SpaceParams) -> Result<Complex64> {
    oscillator_domain(p.z_norm_sq(), params)?;
    let (r, alpha) = (params.radius, params.coupling);
    let ambient = stereo_to_ambient(&p.z, params)?;
    if ambient.x_last.abs() < BOUNDARY_GUARD * r {
        return Err(Error::Singularity("x₃ = 0".into()));
    }
    let x_bar = Complex64::new(ambient.x[0], -ambient.x[1]);
    let jv = RotationVector { curvature: params.curvature }.value(p);
    Ok(jv * jv / (2.0 * r * r) + alpha * alpha * r * r / 2.0 * x_bar * x_bar / (ambient.x_last * ambient.x_last))
}

/// `𝐀`, with `𝐱_C` taken from the pseudosphere embedding of `w`.
pub fn runge_lenz(p: &PlanarPoint, params: &SpaceParams) -> Result<Complex64> {
    require_pseudosphere(params)?;
    coulomb_domain(p.z[0].norm_sqr())?;
    let ambient = stereo_to_ambient(&p.z, params)?;
    let x_bar = Complex64::new(ambient.x[0], -ambient.x[1]);
    let j = angular_momentum(p);
    let jv = RotationVector { curvature: Curvature::Pseudosphere }.value(p);
    Ok(-I * j * jv / params.radius + params.coupling * x_bar / ambient.x_norm_sq().sqrt())
}

/// Values of the conserved quantities at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSet {
    pub energy: f64,
    pub angular_momentum: f64,
    pub rotation_vector: Complex64,
    /// `𝐈` for the oscillator, `𝐀` for the Coulomb system.
    pub hidden: Complex64,
}

pub fn oscillator_invariants(p: &PlanarPoint, params: &SpaceParams) -> Result<InvariantSet> {
    let gens = rotation_generators(p, params.curvature);
    Ok(InvariantSet {
        energy: osc_hamiltonian(p, params)?,
        angular_momentum: gens.scalar,
        rotation_vector: gens.vector,
        hidden: hidden_invariant(p, params)?,
    })
}

pub fn coulomb_invariants(p: &PlanarPoint, params: &SpaceParams) -> Result<InvariantSet> {
    let gens = rotation_generators(p, Curvature::Pseudosphere);
    Ok(InvariantSet {
        energy: coulomb_hamiltonian(p, params)?,
        angular_momentum: gens.scalar,
        rotation_vector: gens.vector,
        hidden: runge_lenz(p, params)?,
    })
}
