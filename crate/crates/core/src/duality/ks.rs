//! The Kustaanheimo-Stiefel map from the four-dimensional oscillator to the
//! three-dimensional MIC-Kepler system on the pseudosphere.
//!
//! Index convention: `u_k = Σ z^a σ_k^{ab} z̄^b` and
//! `p_k = Re(Σ z^a σ_k^{ab} π_b)/(z z̄)` with the standard Pauli matrices,
//! which gives `u₁ + i u₂ = 2 z¹ z̄²`, `u₃ = |z¹|² − |z²|²` and `|u| = z z̄`.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bohlin::DualityRecord;
use super::constants::MONOPOLE_BRACKET_CONSTANT;
use crate::dynamics::hamiltonians::angular_momentum;
use crate::dynamics::observable::{poisson_bracket, FiniteDifference, Gradient, Observable};
use crate::dynamics::osc_hamiltonian;
use crate::dynamics::phase::QuadPoint;
use crate::dynamics::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::geometry::SpaceParams;
use crate::io::fmt17;
use crate::tolerances::LEVEL_SET;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrices `σ₁, σ₂, σ₃`.
pub const PAULI: [[[Complex64; 2]; 2]; 3] = [
    [[ZERO, ONE], [ONE, ZERO]],
    [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]],
    [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]],
];

/// A point of the reduced phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedPoint {
    pub u: [f64; 3],
    pub p: [f64; 3],
    /// Monopole charge `s = J/2`.
    pub s: f64,
}

impl ReducedPoint {
    pub fn u_norm(&self) -> f64 {
        norm3(&self.u)
    }

    pub fn p_norm_sq(&self) -> f64 {
        self.p.iter().map(|x| x * x).sum()
    }
}

fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `Σ x^a σ^{ab} y^b`.
fn sandwich(x: &[Complex64; 2], sigma: &[[Complex64; 2]; 2], y: &[Complex64; 2]) -> Complex64 {
    let mut acc = ZERO;
    for a in 0..2 {
        for b in 0..2 {
            acc += x[a] * sigma[a][b] * y[b];
        }
    }
    acc
}

pub fn ks_map(p: &QuadPoint) -> Result<ReducedPoint> {
    let rho = p.z_norm_sq();
    if rho == 0.0 {
        return Err(Error::Domain("the Kustaanheimo-Stiefel map is undefined at z = 0".into()));
    }
    let zb = p.z.map(|c| c.conj());
    let u = std::array::from_fn(|k| sandwich(&p.z, &PAULI[k], &zb).re);
    let pv = std::array::from_fn(|k| sandwich(&p.z, &PAULI[k], &p.pi).re / rho);
    Ok(ReducedPoint { u, p: pv, s: angular_momentum(p) / 2.0 })
}

/// `u_k` as an observable with closed-form gradient.
#[derive(Debug, Clone, Copy)]
pub struct KsCoordinate(pub usize);

impl Observable<2> for KsCoordinate {
    fn value(&self, p: &QuadPoint) -> Complex64 {
        let zb = p.z.map(|c| c.conj());
        Complex64::new(sandwich(&p.z, &PAULI[self.0], &zb).re, 0.0)
    }

    #[allow(clippy::needless_range_loop)]
    fn gradient(&self, p: &QuadPoint) -> Gradient<2> {
        let s = &PAULI[self.0];
        let mut g = Gradient::zero();
        for a in 0..2 {
            for b in 0..2 {
                g.dz[a] += s[a][b] * p.z[b].conj();
                g.dz_bar[b] += p.z[a] * s[a][b];
            }
        }
        g
    }
}

/// `p_k` as an observable with closed-form gradient.
#[derive(Debug, Clone, Copy)]
pub struct KsMomentum(pub usize);

impl Observable<2> for KsMomentum {
    fn value(&self, p: &QuadPoint) -> Complex64 {
        Complex64::new(sandwich(&p.z, &PAULI[self.0], &p.pi).re / p.z_norm_sq(), 0.0)
    }

    #[allow(clippy::needless_range_loop)]
    fn gradient(&self, p: &QuadPoint) -> Gradient<2> {
        let s = &PAULI[self.0];
        let rho = p.z_norm_sq();
        let re_m = sandwich(&p.z, s, &p.pi).re;
        let mut g = Gradient::zero();
        for a in 0..2 {
            let s_pi: Complex64 = (0..2).map(|b| s[a][b] * p.pi[b]).sum();
            let z_s: Complex64 = (0..2).map(|b| p.z[b] * s[b][a]).sum();
            g.dz[a] = s_pi / (2.0 * rho) - re_m * p.z[a].conj() / (rho * rho);
            g.dz_bar[a] = g.dz[a].conj();
            g.dpi[a] = z_s / (2.0 * rho);
            g.dpi_bar[a] = g.dpi[a].conj();
        }
        g
    }
}

/// Residuals of the reduced brackets at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBracketResidual {
    /// `|{u_i, u_j}|`
    pub uu: [[f64; 3]; 3],
    /// `|{p_i, u_j} − δ_ij|`
    pub pu: [[f64; 3]; 3],
    /// `|{p_i, p_j} − c s ε_ijk u_k/|u|³|`
    pub pp: [[f64; 3]; 3],
}

impl ReducedBracketResidual {
    pub fn max(&self) -> f64 {
        [self.uu, self.pu, self.pp].iter().flatten().flatten().copied().fold(0.0, f64::max)
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Monopole bracket `c s ε_ijk u_k/|u|³` at a reduced point.
pub fn monopole_bracket(r: &ReducedPoint, i: usize, j: usize) -> f64 {
    let u3 = r.u_norm().powi(3);
    (0..3).map(|k| levi_civita(i, j, k) * r.u[k]).sum::<f64>() * MONOPOLE_BRACKET_CONSTANT * r.s / u3
}

fn bracket_residuals<U, P>(p: &QuadPoint, u: U, mom: P) -> Result<ReducedBracketResidual>
where
    U: Fn(usize) -> Box<dyn Observable<2>>,
    P: Fn(usize) -> Box<dyn Observable<2>>,
{
    let r = ks_map(p)?;
    let us: Vec<_> = (0..3).map(&u).collect();
    let ps: Vec<_> = (0..3).map(&mom).collect();
    let mut out = ReducedBracketResidual { uu: [[0.0; 3]; 3], pu: [[0.0; 3]; 3], pp: [[0.0; 3]; 3] };
    for i in 0..3 {
        for j in 0..3 {
            out.uu[i][j] = poisson_bracket(us[i].as_ref(), us[j].as_ref(), p).norm();
            let delta = if i == j { 1.0 } else { 0.0 };
            out.pu[i][j] = (poisson_bracket(ps[i].as_ref(), us[j].as_ref(), p) - delta).norm();
            out.pp[i][j] = (poisson_bracket(ps[i].as_ref(), ps[j].as_ref(), p) - monopole_bracket(&r, i, j)).norm();
        }
    }
    Ok(out)
}

/// Reduced bracket residuals using the closed-form gradients of `u`, `p`.
pub fn reduced_bracket_check(p: &QuadPoint) -> Result<ReducedBracketResidual> {
    bracket_residuals(p, |k| Box::new(KsCoordinate(k)), |k| Box::new(KsMomentum(k)))
}

/// The same residuals with finite-difference gradients throughout.
pub fn reduced_bracket_check_fd(p: &QuadPoint) -> Result<ReducedBracketResidual> {
    static U: [KsCoordinate; 3] = [KsCoordinate(0), KsCoordinate(1), KsCoordinate(2)];
    static P: [KsMomentum; 3] = [KsMomentum(0), KsMomentum(1), KsMomentum(2)];
    bracket_residuals(p, |k| Box::new(FiniteDifference(&U[k])), |k| Box::new(FiniteDifference(&P[k])))
}

/// `{p₁, p₂} |u|³ / (s u₃)` from finite-difference brackets, the
/// brute-force estimate of [`MONOPOLE_BRACKET_CONSTANT`].
pub fn measure_monopole_constant(p: &QuadPoint) -> Result<f64> {
    let r = ks_map(p)?;
    if r.s == 0.0 || r.u[2] == 0.0 {
        return Err(Error::Domain("measurement needs s ≠ 0 and u₃ ≠ 0".into()));
    }
    let b = poisson_bracket(&FiniteDifference(&KsMomentum(0)), &FiniteDifference(&KsMomentum(1)), p).re;
    Ok(b * r.u_norm().powi(3) / (r.s * r.u[2]))
}

/// Left-hand side of the MIC-Kepler energy surface,
/// `(1−u²)²/(8r₀²)(p² + s²/u²) − (γ/r₀)(1+u²)/(2|u|)`.
pub fn mic_energy(r: &ReducedPoint, r0: f64, gamma: f64) -> f64 {
    let un = r.u_norm();
    let u2 = un * un;
    (1.0 - u2).powi(2) / (8.0 * r0 * r0) * (r.p_norm_sq() + r.s * r.s / u2) - gamma / r0 * (1.0 + u2) / (2.0 * un)
}

/// `|mic_energy − E_C|` at the image of a point on `H_osc = energy`, `J = 2s`.
pub fn mic_surface_check(p: &QuadPoint, energy: f64, s: f64, params: &SpaceParams) -> Result<f64> {
    if params.dim != 4 {
        return Err(Error::param("dim", format!("the Kustaanheimo-Stiefel map needs dim = 4, got {}", params.dim)));
    }
    let h = osc_hamiltonian(p, params)?;
    if (h - energy).abs() > LEVEL_SET * energy.abs().max(1.0) {
        return Err(Error::OffSurface(format!("H_osc = {h} but level is {energy}")));
    }
    let j = angular_momentum(p);
    if (j - 2.0 * s).abs() > LEVEL_SET * s.abs().max(1.0) {
        return Err(Error::OffSurface(format!("J = {j} but 2s = {}", 2.0 * s)));
    }
    let rec = DualityRecord::from_energy(energy, params);
    let r = ks_map(p)?;
    Ok((mic_energy(&r, rec.r0, rec.gamma) - rec.coulomb_energy).abs())
}

/// Residual of the MIC surface for whatever level the point is on.
pub fn mic_residual(p: &QuadPoint, params: &SpaceParams) -> Result<f64> {
    let energy = osc_hamiltonian(p, params)?;
    mic_surface_check(p, energy, angular_momentum(p) / 2.0, params)
}

// J = −2 Im(z·π); with π = λ z̄, J = −2 ρ Im λ, so λ = −i s/ρ.
fn fiber_momentum_factor(rho: f64, s: f64) -> Complex64 {
    -I * s / rho
}

/// Lowest `H_osc` on `J = 2s` at fixed `z`, reached by `π ∥ z̄`.
pub fn level_set_minimum(z: [Complex64; 2], s: f64, params: &SpaceParams) -> Result<f64> {
    let rho = z[0].norm_sqr() + z[1].norm_sqr();
    if rho == 0.0 {
        return Err(Error::Domain("level-set construction needs z ≠ 0".into()));
    }
    let lambda = fiber_momentum_factor(rho, s);
    osc_hamiltonian(&QuadPoint::new(z, [lambda * z[0].conj(), lambda * z[1].conj()]), params)
}

/// A point with `H_osc = energy` and `J = 2s` at coordinate `z`.
///
/// The momentum is `π = λ z̄ + v` with `v ⟂ z̄` chosen along `direction`
/// projected off `z̄`; `λ` fixes `J` and `|v|` fixes the energy.
pub fn point_on_level_set(
    z: [Complex64; 2],
    direction: [Complex64; 2],
    energy: f64,
    s: f64,
    params: &SpaceParams,
) -> Result<QuadPoint> {
    let rho = z[0].norm_sqr() + z[1].norm_sqr();
    if rho == 0.0 {
        return Err(Error::Domain("level-set construction needs z ≠ 0".into()));
    }
    let zb = [z[0].conj(), z[1].conj()];
    let lambda = fiber_momentum_factor(rho, s);
    // v: component of `direction` orthogonal (hermitian) to z̄, so z·v = 0.
    let overlap = z[0] * direction[0] + z[1] * direction[1];
    let mut v = [direction[0] - overlap * z[0].conj() / rho, direction[1] - overlap * z[1].conj() / rho];
    let vn = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if vn == 0.0 {
        return Err(Error::Domain("momentum direction is parallel to z̄".into()));
    }
    v = v.map(|c| c / vn);
    let h0 = level_set_minimum(z, s, params)?;
    if h0 > energy {
        return Err(Error::Domain(format!("energy {energy} is below the minimum {h0} at this z and s")));
    }
    let (eps, r) = (params.epsilon(), params.radius);
    // the kinetic term is proportional to |π|² = |λ|²ρ + |v|²
    let k = (energy - h0) * 2.0 * r * r / (1.0 + eps * rho).powi(2);
    let pi = [lambda * zb[0] + v[0] * k.sqrt(), lambda * zb[1] + v[1] * k.sqrt()];
    Ok(QuadPoint::new(z, pi))
}

/// A four-dimensional trajectory pushed through the map, with the MIC
/// surface residual at each logged time.
#[derive(Debug, Clone)]
pub struct ReducedTrajectory {
    pub times: Vec<f64>,
    pub points: Vec<ReducedPoint>,
    pub mic_residual: Vec<f64>,
}

impl ReducedTrajectory {
    pub const CSV_HEADER: &'static str = "t,u1,u2,u3,p1,p2,p3,s,mic_residual";

    /// Residuals are measured against the level of the initial point.
    pub fn from_trajectory(traj: &Trajectory<2>, params: &SpaceParams) -> Result<Self> {
        let first = traj.states.first().ok_or_else(|| Error::Domain("empty trajectory".into()))?;
        let energy = osc_hamiltonian(first, params)?;
        let rec = DualityRecord::from_energy(energy, params);
        let mut out = Self { times: Vec::new(), points: Vec::new(), mic_residual: Vec::new() };
        for (t, state) in traj.times.iter().zip(&traj.states) {
            let r = ks_map(state)?;
            out.times.push(*t);
            out.mic_residual.push((mic_energy(&r, rec.r0, rec.gamma) - rec.coulomb_energy).abs());
            out.points.push(r);
        }
        Ok(out)
    }

    pub fn max_residual(&self) -> f64 {
        self.mic_residual.iter().copied().fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::CSV_HEADER)?;
        for ((t, r), res) in self.times.iter().zip(&self.points).zip(&self.mic_residual) {
            let row: Vec<String> = std::iter::once(*t).chain(r.u).chain(r.p).chain([r.s, *res]).map(fmt17).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}
