//! The Bohlin map `w = z²`, `p = π/(2z)` from the planar oscillator on a
//! sphere or pseudosphere to the planar Coulomb system on the pseudosphere.
//!
//! The energy surface `H_osc = E` is carried onto `H_C = E_C` with
//! `r₀ = R₀²`, `γ = E/2` and `−2E_C = α² + εE/r₀`. Under the map
//! `J = 2J_C` identically and `𝐈 = 2𝐀` on the energy surface.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::hamiltonians::{
    angular_momentum, CoulombHamiltonian, HiddenInvariant, OscillatorHamiltonian, RungeLenz,
};
use crate::dynamics::observable::Observable;
use crate::dynamics::phase::PlanarPoint;
use crate::dynamics::{coulomb_hamiltonian, osc_hamiltonian};
use crate::error::{Error, Result};
use crate::geometry::SpaceParams;
use crate::io::fmt17;
use crate::tolerances::LEVEL_SET;

/// Parameters on both sides of a duality map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityRecord {
    /// Oscillator energy `E`.
    pub energy: f64,
    pub alpha: f64,
    pub epsilon: f64,
    /// Oscillator radius `R₀`.
    pub big_radius: f64,
    /// Coulomb radius `r₀ = R₀²`.
    pub r0: f64,
    /// Coulomb coupling `γ = E/2`.
    pub gamma: f64,
    /// Coulomb energy, `−2E_C = α² + εE/r₀`.
    pub coulomb_energy: f64,
}

impl DualityRecord {
    pub const CSV_HEADER: &'static str = "E,alpha,epsilon,R0,r0,gamma,E_C";

    pub fn from_energy(energy: f64, params: &SpaceParams) -> Self {
        let (eps, big_r, alpha) = (params.epsilon(), params.radius, params.coupling);
        let r0 = big_r * big_r;
        Self {
            energy,
            alpha,
            epsilon: eps,
            big_radius: big_r,
            r0,
            gamma: energy / 2.0,
            coulomb_energy: -(alpha * alpha + eps * energy / r0) / 2.0,
        }
    }

    /// Parameters of the Coulomb-side system.
    pub fn coulomb_params(&self, dim: usize) -> Result<SpaceParams> {
        if self.gamma < 0.0 {
            return Err(Error::param("gamma", format!("negative oscillator energy E = {} gives γ < 0", self.energy)));
        }
        SpaceParams::coulomb(self.r0, self.gamma, dim)
    }

    pub fn csv_row(&self) -> String {
        [self.energy, self.alpha, self.epsilon, self.big_radius, self.r0, self.gamma, self.coulomb_energy]
            .into_iter()
            .map(fmt17)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::CSV_HEADER)?;
        writeln!(w, "{}", self.csv_row())
    }
}

pub fn bohlin_map(p: &PlanarPoint) -> Result<PlanarPoint> {
    let z = p.z[0];
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("the Bohlin map is undefined at z = 0".into()));
    }
    Ok(PlanarPoint::new([z * z], [p.pi[0] / (2.0 * z)]))
}

pub fn bohlin_params(energy: f64, params: &SpaceParams) -> Result<DualityRecord> {
    if params.dim != 2 {
        return Err(Error::param("dim", format!("the Bohlin map needs dim = 2, got {}", params.dim)));
    }
    Ok(DualityRecord::from_energy(energy, params))
}

fn require_on_surface(value: f64, level: f64, what: &str) -> Result<()> {
    if (value - level).abs() > LEVEL_SET * level.abs().max(1.0) {
        return Err(Error::OffSurface(format!("{what} = {value} but level is {level}")));
    }
    Ok(())
}

/// `|H_C(bohlin_map(p)) − E_C|` for a point on `H_osc = energy`.
pub fn bohlin_surface_check(p: &PlanarPoint, energy: f64, params: &SpaceParams) -> Result<f64> {
    require_on_surface(osc_hamiltonian(p, params)?, energy, "H_osc")?;
    let rec = bohlin_params(energy, params)?;
    let image = bohlin_map(p)?;
    let cparams = rec.coulomb_params(2)?;
    Ok((coulomb_hamiltonian(&image, &cparams)? - rec.coulomb_energy).abs())
}

/// Residuals of `J = 2J_C` and `𝐈 = 2𝐀` at a mapped point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsMapResidual {
    pub angular_momentum: f64,
    pub hidden: f64,
}

/// Compares the oscillator constants at `p` with the doubled Coulomb
/// constants at its image, using the energy `H_osc(p)`.
pub fn bohlin_constants_residual(p: &PlanarPoint, params: &SpaceParams) -> Result<ConstantsMapResidual> {
    let energy = osc_hamiltonian(p, params)?;
    let rec = bohlin_params(energy, params)?;
    let cparams = rec.coulomb_params(2)?;
    let image = bohlin_map(p)?;
    let j = angular_momentum(p);
    let jc = angular_momentum(&image);
    let i = HiddenInvariant { params: *params }.value(p);
    let a = RungeLenz { params: cparams }.value(&image);
    Ok(ConstantsMapResidual { angular_momentum: (j - 2.0 * jc).abs(), hidden: (i - 2.0 * a).norm() })
}

/// Point on `H_osc = energy` at coordinate `z`, with momentum along `direction`.
pub fn point_on_energy_surface(
    z: Complex64,
    direction: Complex64,
    energy: f64,
    params: &SpaceParams,
) -> Result<PlanarPoint> {
    let probe = PlanarPoint::new([z], [Complex64::new(0.0, 0.0)]);
    let potential = osc_hamiltonian(&probe, params)?;
    if potential > energy {
        return Err(Error::Domain(format!("potential {potential} exceeds the energy {energy} at z = {z}")));
    }
    let (eps, r) = (params.epsilon(), params.radius);
    let rho = z.norm_sqr();
    let k = (energy - potential) * 2.0 * r * r / (1.0 + eps * rho).powi(2);
    let unit = if direction.norm() > 0.0 { direction / direction.norm() } else { Complex64::new(1.0, 0.0) };
    Ok(PlanarPoint::new([z], [unit * k.sqrt()]))
}

/// Real coordinates `(Re z, Im z, Re π, Im π)`.
fn real4(p: &PlanarPoint) -> [f64; 4] {
    [p.z[0].re, p.z[0].im, p.pi[0].re, p.pi[0].im]
}

/// Matrix of `ω = dπ∧dz + dπ̄∧dz̄ = 2(da∧dx − db∧dy)` in the coordinates
/// `(x, y, a, b)` with `z = x + iy`, `π = a + ib`.
pub fn symplectic_matrix() -> [[f64; 4]; 4] {
    [[0.0, 0.0, -2.0, 0.0], [0.0, 0.0, 0.0, 2.0], [2.0, 0.0, 0.0, 0.0], [0.0, -2.0, 0.0, 0.0]]
}

/// Jacobian of the Bohlin map by fourth-order central differences, each
/// step scaled to the magnitude of the coordinate group it perturbs.
pub fn bohlin_jacobian_fd(p: &PlanarPoint) -> Result<[[f64; 4]; 4]> {
    bohlin_map(p)?;
    let x0 = real4(p);
    let zscale = p.z[0].norm();
    let pscale = p.pi[0].norm().max(zscale);
    let eval = |x: [f64; 4]| -> [f64; 4] {
        let q = PlanarPoint::new([Complex64::new(x[0], x[1])], [Complex64::new(x[2], x[3])]);
        real4(&bohlin_map(&q).expect("perturbation stays away from z = 0"))
    };
    let mut jac = [[0.0; 4]; 4];
    for col in 0..4 {
        let h = 1e-3 * if col < 2 { zscale } else { pscale };
        let shifted = |k: f64| {
            let mut x = x0;
            x[col] += k * h;
            eval(x)
        };
        let (m2, m1, p1, p2) = (shifted(-2.0), shifted(-1.0), shifted(1.0), shifted(2.0));
        for row in 0..4 {
            jac[row][col] = (m2[row] - 8.0 * m1[row] + 8.0 * p1[row] - p2[row]) / (12.0 * h);
        }
    }
    Ok(jac)
}

/// `max |(JᵀΩJ − Ω)_{ij}|` with the finite-difference Jacobian.
pub fn bohlin_canonicity_residual(p: &PlanarPoint) -> Result<f64> {
    let jac = bohlin_jacobian_fd(p)?;
    let omega = symplectic_matrix();
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                for l in 0..4 {
                    acc += jac[k][i] * omega[k][l] * jac[l][j];
                }
            }
            worst = worst.max((acc - omega[i][j]).abs());
        }
    }
    Ok(worst)
}

/// Energy of the Coulomb image at the level of the oscillator energy surface
/// (helper for pushing oscillator trajectories through the map).
pub fn coulomb_image(p: &PlanarPoint, params: &SpaceParams) -> Result<(PlanarPoint, SpaceParams, DualityRecord)> {
    let energy = OscillatorHamiltonian { params: *params }.value(p).re;
    let rec = bohlin_params(energy, params)?;
    let cparams = rec.coulomb_params(2)?;
    let image = bohlin_map(p)?;
    debug_assert!(CoulombHamiltonian { params: cparams }.value(&image).re.is_finite());
    Ok((image, cparams, rec))
}
