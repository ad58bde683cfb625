//! Adaptive integration of Hamilton's equations `ż = ∂H/∂π`, `π̇ = −∂H/∂z`.
//!
//! The stepper is the Dormand-Prince 5(4) pair with local extrapolation.
//! The local error is measured per component relative to the magnitude of
//! its group (all coordinates, or all momenta), which keeps the tolerance
//! meaningful when `|z|` and `|π|` differ by many orders of magnitude (the
//! flat limit has `|z| ~ 1/R₀` and `|π| ~ R₀`).

use num_complex::Complex64;

use super::hamiltonians::{angular_momentum, CoulombHamiltonian, HiddenInvariant, OscillatorHamiltonian, RungeLenz};
use super::observable::Observable;
use super::phase::{PhasePoint, PlanarPoint, QuadPoint};
use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::geometry::SpaceParams;
use crate::tolerances::SINGULARITY_GUARD;

/// A Hamiltonian flow together with its guarded domain and logged invariants.
pub trait HamiltonianSystem<const N: usize>: Sync {
    type Hamiltonian: Observable<N>;

    fn hamiltonian(&self) -> &Self::Hamiltonian;

    /// Name of the singular factor that fell below `threshold`, if any.
    fn guard(&self, p: &PhasePoint<N>, threshold: f64) -> Option<&'static str>;

    fn invariant_names(&self) -> &'static [&'static str];

    fn invariants(&self, p: &PhasePoint<N>) -> Vec<f64>;

    /// Phase-space velocity `(ż, π̇)`.
    fn velocity(&self, p: &PhasePoint<N>) -> PhasePoint<N> {
        let g = self.hamiltonian().gradient(p);
        PhasePoint { z: g.dpi, pi: g.dz.map(|c| -c) }
    }

    fn energy(&self, p: &PhasePoint<N>) -> f64 {
        self.hamiltonian().value(p).re
    }
}

fn oscillator_guard(rho: f64, eps: f64, threshold: f64) -> Option<&'static str> {
    if (1.0 - eps * rho).abs() < threshold {
        Some("1 - epsilon z zbar")
    } else if (1.0 + eps * rho).abs() < threshold {
        Some("1 + epsilon z zbar")
    } else {
        None
    }
}

/// Planar oscillator; logs `H, J, Re 𝐈, Im 𝐈`.
#[derive(Debug, Clone, Copy)]
pub struct PlanarOscillator {
    h: OscillatorHamiltonian,
}

impl PlanarOscillator {
    pub fn new(params: SpaceParams) -> Self {
        Self { h: OscillatorHamiltonian { params } }
    }

    pub fn params(&self) -> &SpaceParams {
        &self.h.params
    }
}

impl HamiltonianSystem<1> for PlanarOscillator {
    type Hamiltonian = OscillatorHamiltonian;

    fn hamiltonian(&self) -> &OscillatorHamiltonian {
        &self.h
    }

    fn guard(&self, p: &PlanarPoint, threshold: f64) -> Option<&'static str> {
        oscillator_guard(p.z_norm_sq(), self.h.params.epsilon(), threshold)
    }

    fn invariant_names(&self) -> &'static [&'static str] {
        &["H", "J", "ReI", "ImI"]
    }

    fn invariants(&self, p: &PlanarPoint) -> Vec<f64> {
        let i = HiddenInvariant { params: self.h.params }.value(p);
        vec![self.energy(p), angular_momentum(p), i.re, i.im]
    }
}

/// Four-dimensional oscillator; logs `H, J`.
#[derive(Debug, Clone, Copy)]
pub struct QuadOscillator {
    h: OscillatorHamiltonian,
}

impl QuadOscillator {
    pub fn new(params: SpaceParams) -> Self {
        Self { h: OscillatorHamiltonian { params } }
    }

    pub fn params(&self) -> &SpaceParams {
        &self.h.params
    }
}

impl HamiltonianSystem<2> for QuadOscillator {
    type Hamiltonian = OscillatorHamiltonian;

    fn hamiltonian(&self) -> &OscillatorHamiltonian {
        &self.h
    }

    fn guard(&self, p: &QuadPoint, threshold: f64) -> Option<&'static str> {
        oscillator_guard(p.z_norm_sq(), self.h.params.epsilon(), threshold)
    }

    fn invariant_names(&self) -> &'static [&'static str] {
        &["H", "J"]
    }

    fn invariants(&self, p: &QuadPoint) -> Vec<f64> {
        vec![self.energy(p), angular_momentum(p)]
    }
}

/// Planar Coulomb system on the pseudosphere; logs `H, J, Re 𝐀, Im 𝐀`.
#[derive(Debug, Clone, Copy)]
pub struct PlanarCoulomb {
    h: CoulombHamiltonian,
}

impl PlanarCoulomb {
    pub fn new(params: SpaceParams) -> Result<Self> {
        if params.curvature != crate::geometry::Curvature::Pseudosphere {
            return Err(Error::param("epsilon", "Coulomb-type systems live on the pseudosphere (epsilon = -1)"));
        }
        Ok(Self { h: CoulombHamiltonian { params } })
    }

    pub fn params(&self) -> &SpaceParams {
        &self.h.params
    }
}

impl HamiltonianSystem<1> for PlanarCoulomb {
    type Hamiltonian = CoulombHamiltonian;

    fn hamiltonian(&self) -> &CoulombHamiltonian {
        &self.h
    }

    fn guard(&self, p: &PlanarPoint, threshold: f64) -> Option<&'static str> {
        let rho = p.z[0].norm_sqr();
        if rho.sqrt() < threshold {
            Some("|w|")
        } else if (1.0 - rho).abs() < threshold {
            Some("1 - w wbar")
        } else {
            None
        }
    }

    fn invariant_names(&self) -> &'static [&'static str] {
        &["H", "J", "ReA", "ImA"]
    }

    fn invariants(&self, p: &PlanarPoint) -> Vec<f64> {
        let a = RungeLenz { params: self.h.params }.value(p);
        vec![self.energy(p), angular_momentum(p), a.re, a.im]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// Local error bound, relative to the coordinate/momentum magnitudes.
    pub tol: f64,
    /// Steps below `h_min · max(1, |t|)` are a [`Error::StepFailure`].
    pub h_min: f64,
    pub max_steps: usize,
    pub guard: f64,
}

impl IntegratorConfig {
    pub fn new(tol: f64) -> Self {
        Self { tol, h_min: 1e-14, max_steps: 50_000_000, guard: SINGULARITY_GUARD }
    }
}

// Dormand-Prince 5(4) tableau. The flows are autonomous, so the nodes `C`
// only appear in the consistency test.
#[cfg(test)]
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

fn group_max<const N: usize>(p: &PhasePoint<N>) -> (f64, f64) {
    let z = p.z.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let pi = p.pi.iter().map(|c| c.norm()).fold(0.0, f64::max);
    (z, pi)
}

struct StepOutcome<const N: usize> {
    y: PhasePoint<N>,
    f_new: PhasePoint<N>,
    err: f64,
}

fn dp_step<S, const N: usize>(
    system: &S,
    y: &PhasePoint<N>,
    f0: &PhasePoint<N>,
    h: f64,
    tol: f64,
    floors: (f64, f64),
) -> StepOutcome<N>
where
    S: HamiltonianSystem<N>,
{
    let mut k: [PhasePoint<N>; 7] = [*f0; 7];
    for s in 1..7 {
        let mut arg = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            if A[s][j] != 0.0 {
                arg = arg + *kj * (h * A[s][j]);
            }
        }
        k[s] = system.velocity(&arg);
    }
    // stage 7 is evaluated at the 5th-order solution (FSAL)
    let y_new = k.iter().zip(B5).fold(*y, |acc, (ks, b)| if b != 0.0 { acc + *ks * (h * b) } else { acc });
    let err_vec = k.iter().zip(B5.iter().zip(B4)).fold(PhasePoint::<N>::zero(), |acc, (ks, (b5, b4))| {
        let d = b5 - b4;
        if d != 0.0 {
            acc + *ks * (h * d)
        } else {
            acc
        }
    });
    let (z0, p0) = group_max(y);
    let (z1, p1) = group_max(&y_new);
    let sz = tol * z0.max(z1).max(floors.0);
    let sp = tol * p0.max(p1).max(floors.1);
    let mut err: f64 = 0.0;
    for a in 0..N {
        err = err.max(err_vec.z[a].re.abs() / sz).max(err_vec.z[a].im.abs() / sz);
        err = err.max(err_vec.pi[a].re.abs() / sp).max(err_vec.pi[a].im.abs() / sp);
    }
    if !y_new.is_finite() || !k[6].is_finite() {
        err = f64::INFINITY;
    }
    StepOutcome { y: y_new, f_new: k[6], err }
}

/// Integrates from `t = 0` to `t_end` with the default configuration.
pub fn integrate<S, const N: usize>(system: &S, p0: PhasePoint<N>, t_end: f64, tol: f64) -> Result<Trajectory<N>>
where
    S: HamiltonianSystem<N>,
{
    integrate_with(system, p0, t_end, &IntegratorConfig::new(tol))
}

pub fn integrate_with<S, const N: usize>(
    system: &S,
    p0: PhasePoint<N>,
    t_end: f64,
    config: &IntegratorConfig,
) -> Result<Trajectory<N>>
where
    S: HamiltonianSystem<N>,
{
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::param("T", format!("must be positive, got {t_end}")));
    }
    if !(config.tol.is_finite() && config.tol > 0.0) {
        return Err(Error::param("tol", format!("must be positive, got {}", config.tol)));
    }
    if !p0.is_finite() {
        return Err(Error::Domain("initial point is not finite".into()));
    }
    if let Some(q) = system.guard(&p0, config.guard) {
        return Err(Error::SingularityApproach { t: 0.0, quantity: q });
    }

    let mut traj = Trajectory::new(system.invariant_names());
    traj.push(0.0, p0, system.invariants(&p0));

    let (z0, pi0) = group_max(&p0);
    let floors = (1e-3 * z0.max(f64::MIN_POSITIVE), 1e-3 * pi0.max(f64::MIN_POSITIVE));

    let mut t = 0.0;
    let mut y = p0;
    let mut f = system.velocity(&y);
    let mut h = initial_step(&y, &f, config.tol, t_end);
    let mut steps = 0usize;
    let mut rejected_last = false;

    while t < t_end {
        if steps >= config.max_steps {
            return Err(Error::StepFailure { t, h });
        }
        steps += 1;
        let last = t + h >= t_end;
        let h_try = if last { t_end - t } else { h };
        let out = dp_step(system, &y, &f, h_try, config.tol, floors);
        if out.err <= 1.0 {
            t = if last { t_end } else { t + h_try };
            y = out.y;
            f = out.f_new;
            if let Some(q) = system.guard(&y, config.guard) {
                return Err(Error::SingularityApproach { t, quantity: q });
            }
            traj.push(t, y, system.invariants(&y));
            let fac = if out.err == 0.0 { 5.0 } else { (0.9 * out.err.powf(-0.2)).clamp(0.2, 5.0) };
            let fac = if rejected_last { fac.min(1.0) } else { fac };
            rejected_last = false;
            if !last {
                h = h_try * fac;
            }
        } else {
            let fac = if out.err.is_finite() { (0.9 * out.err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.1 };
            h = h_try * fac;
            rejected_last = true;
            if h < config.h_min * t.abs().max(1.0) {
                return Err(Error::StepFailure { t, h });
            }
        }
    }
    traj.rejected_steps = steps - (traj.len() - 1);
    Ok(traj)
}

fn initial_step<const N: usize>(y: &PhasePoint<N>, f: &PhasePoint<N>, tol: f64, t_end: f64) -> f64 {
    let (z, p) = group_max(y);
    let (dz, dp) = group_max(f);
    let mut scale = f64::INFINITY;
    if dz > 0.0 && z > 0.0 {
        scale = scale.min(z / dz);
    }
    if dp > 0.0 && p > 0.0 {
        scale = scale.min(p / dp);
    }
    if !scale.is_finite() {
        scale = 1e-3 * t_end;
    }
    (0.01 * scale * tol.powf(0.2)).min(t_end).max(1e-12 * t_end)
}

/// Cubic Hermite interpolation between two accepted states.
pub fn hermite<S, const N: usize>(
    system: &S,
    (t0, y0): (f64, &PhasePoint<N>),
    (t1, y1): (f64, &PhasePoint<N>),
    t: f64,
) -> PhasePoint<N>
where
    S: HamiltonianSystem<N>,
{
    let h = t1 - t0;
    let s = (t - t0) / h;
    let (f0, f1) = (system.velocity(y0), system.velocity(y1));
    let h00 = 2.0 * s.powi(3) - 3.0 * s * s + 1.0;
    let h10 = s.powi(3) - 2.0 * s * s + s;
    let h01 = -2.0 * s.powi(3) + 3.0 * s * s;
    let h11 = s.powi(3) - s * s;
    *y0 * h00 + f0 * (h * h10) + *y1 * h01 + f1 * (h * h11)
}

/// Times where `g` crosses zero upward along the trajectory, located on the
/// Hermite interpolant by bisection.
pub fn upward_crossings<S, G, const N: usize>(system: &S, traj: &Trajectory<N>, g: G) -> Vec<f64>
where
    S: HamiltonianSystem<N>,
    G: Fn(&PhasePoint<N>) -> f64,
{
    let mut out = Vec::new();
    let mut prev = g(&traj.states[0]);
    for i in 1..traj.len() {
        let cur = g(&traj.states[i]);
        if prev < 0.0 && cur >= 0.0 {
            let (t0, t1) = (traj.times[i - 1], traj.times[i]);
            let (a, b) = (&traj.states[i - 1], &traj.states[i]);
            let (mut lo, mut hi) = (t0, t1);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if g(&hermite(system, (t0, a), (t1, b), mid)) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        prev = cur;
    }
    out
}

/// `d(z z̄)/dt = 2 Re Σ z̄^a ż^a`.
pub fn radial_rate<S, const N: usize>(system: &S, p: &PhasePoint<N>) -> f64
where
    S: HamiltonianSystem<N>,
{
    let v = system.velocity(p);
    2.0 * p.z.iter().zip(&v.z).map(|(z, dz)| (z.conj() * dz).re).sum::<f64>()
}

/// Mean spacing of consecutive upward crossings of `g`, if at least two occur.
pub fn mean_crossing_period(crossings: &[f64]) -> Option<f64> {
    if crossings.len() < 2 {
        return None;
    }
    Some((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
}

/// Radial period: mean time between successive pericenter passages.
pub fn radial_period<S, const N: usize>(system: &S, p0: PhasePoint<N>, horizon: f64, tol: f64) -> Result<f64>
where
    S: HamiltonianSystem<N>,
{
    let traj = integrate(system, p0, horizon, tol)?;
    let crossings = upward_crossings(system, &traj, |p| radial_rate(system, p));
    mean_crossing_period(&crossings)
        .ok_or_else(|| Error::Domain(format!("fewer than two pericenter passages within t = {horizon}")))
}

/// Circular orbit of the planar oscillator with angular momentum `j`.
///
/// With `z = r` real and `zπ = −iJ/2`, the effective potential is
/// `V(r) = (1 + εr²)² J²/(8R₀² r²) + 2α²R₀² r²/(1 − εr²)²`; the radius is the
/// first sign change of `V′(r)` found by scanning outward, refined by bisection.
pub fn circular_orbit(params: &SpaceParams, j: f64) -> Result<PlanarPoint> {
    let (eps, r0, alpha) = (params.epsilon(), params.radius, params.coupling);
    if j == 0.0 || alpha == 0.0 {
        return Err(Error::Domain("circular orbits need J ≠ 0 and α > 0".into()));
    }
    let c = j * j / (8.0 * r0 * r0);
    let k = 2.0 * alpha * alpha * r0 * r0;
    let dv = |r: f64| c * (2.0 * r - 2.0 / r.powi(3)) + 2.0 * k * r * (1.0 + eps * r * r) / (1.0 - eps * r * r).powi(3);
    let mut lo = 1e-6;
    let mut found = None;
    let n = 20_000;
    for i in 1..n {
        let hi = 1e-6 + (1.0 - 2e-6) * i as f64 / n as f64;
        if dv(lo) < 0.0 && dv(hi) >= 0.0 {
            found = Some((lo, hi));
            break;
        }
        lo = hi;
    }
    let (mut a, mut b) = found.ok_or_else(|| Error::Domain(format!("no circular orbit for J = {j}")))?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if dv(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let r = 0.5 * (a + b);
    let pi = Complex64::new(0.0, -j / (2.0 * r));
    Ok(PlanarPoint::new([Complex64::new(r, 0.0)], [pi]))
}
