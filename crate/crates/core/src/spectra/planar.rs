//! Planar oscillator and its Bohlin images: the Coulomb problem on the
//! pseudosphere in the even (`σ = 0`) and odd (`σ = 1/2`, magnetic vortex)
//! sectors.

use std::fmt;
use std::str::FromStr;

use super::halfint::HalfInt;
use super::line::SpectrumLine;
use crate::duality::DualityRecord;
use crate::error::{Error, Result};
use crate::geometry::{Curvature, SpaceParams};
use crate::tolerances::nudged_floor;

/// `α̃ = sqrt(α² + 1/(4R₀⁴))`.
pub fn alpha_tilde(alpha: f64, big_radius: f64) -> f64 {
    (alpha * alpha + 1.0 / (4.0 * big_radius.powi(4))).sqrt()
}

/// Highest admissible principal quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelBound {
    Unbounded,
    /// Largest admissible value; negative means no levels.
    Finite(i64),
}

impl LevelBound {
    pub fn admits(self, n: i64) -> bool {
        match self {
            LevelBound::Unbounded => n >= 0,
            LevelBound::Finite(max) => (0..=max).contains(&n),
        }
    }

    /// Number of levels `0..=max`, `None` when unbounded.
    pub fn count(self) -> Option<u64> {
        match self {
            LevelBound::Unbounded => None,
            LevelBound::Finite(max) => Some((max + 1).max(0) as u64),
        }
    }
}

impl fmt::Display for LevelBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelBound::Unbounded => write!(f, "unbounded"),
            LevelBound::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// Z₂ sector of the Bohlin reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// `σ = 0`
    Even,
    /// `σ = 1/2`
    Odd,
}

impl Sector {
    pub const BOTH: [Sector; 2] = [Sector::Even, Sector::Odd];

    pub fn sigma(self) -> HalfInt {
        match self {
            Sector::Even => HalfInt::ZERO,
            Sector::Odd => HalfInt::HALF,
        }
    }

    pub fn from_sigma(sigma: HalfInt) -> Result<Self> {
        match sigma.doubled() {
            0 => Ok(Sector::Even),
            1 => Ok(Sector::Odd),
            _ => Err(Error::param("sigma", format!("must be 0 or 1/2, got {sigma}"))),
        }
    }

    /// Sector reached by oscillator level `n` (`N_σ = N/2`).
    pub fn of_level(n: i64) -> Self {
        if n % 2 == 0 {
            Sector::Even
        } else {
            Sector::Odd
        }
    }
}

impl FromStr for Sector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sigma: HalfInt = s.parse().map_err(|_| Error::param("sigma", format!("must be 0 or 1/2, got `{s}`")))?;
        Sector::from_sigma(sigma)
    }
}

fn require_dim(params: &SpaceParams, dim: usize) -> Result<()> {
    if params.dim != dim {
        return Err(Error::param("dim", format!("expected dim = {dim}, got {}", params.dim)));
    }
    Ok(())
}

pub(crate) fn coulomb_args(gamma: f64, r0: f64) -> Result<()> {
    if !(r0.is_finite() && r0 > 0.0) {
        return Err(Error::param("r0", format!("must be positive and finite, got {r0}")));
    }
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::param("gamma", format!("must be non-negative and finite, got {gamma}")));
    }
    Ok(())
}

/// `E = α̃(N+1) + ε(N+1)²/(2R₀²)` without range checks.
pub fn osc_energy_2d(params: &SpaceParams, n: i64) -> f64 {
    let k = (n + 1) as f64;
    let r = params.radius;
    alpha_tilde(params.coupling, r) * k + params.epsilon() * k * k / (2.0 * r * r)
}

/// Unbounded on the sphere, `[2α̃R₀²] − 1` on the pseudosphere.
pub fn osc_nmax_2d(params: &SpaceParams) -> LevelBound {
    match params.curvature {
        Curvature::Sphere => LevelBound::Unbounded,
        Curvature::Pseudosphere => {
            let r2 = params.radius * params.radius;
            LevelBound::Finite(nudged_floor(2.0 * alpha_tilde(params.coupling, params.radius) * r2) as i64 - 1)
        }
    }
}

pub fn osc_spectrum_2d(params: &SpaceParams, n: i64) -> Result<f64> {
    require_dim(params, 2)?;
    let bound = osc_nmax_2d(params);
    if n < 0 {
        return Err(Error::QuantumNumber(format!("N = {n} is negative")));
    }
    if !bound.admits(n) {
        return Err(Error::Range { what: "N", value: n.to_string(), max: bound.to_string() });
    }
    Ok(osc_energy_2d(params, n))
}

/// Level `N` with its `N + 1` states (`M = −N, −N+2, …, N`).
pub fn osc_line_2d(params: &SpaceParams, n: i64) -> Result<SpectrumLine> {
    let energy = osc_spectrum_2d(params, n)?;
    let states = (0..=n / 2).map(|n_r| if n - 2 * n_r == 0 { 1 } else { 2 }).sum();
    Ok(SpectrumLine::new(vec![("N", HalfInt::from_int(n))], energy, states))
}

/// All levels on the pseudosphere, or the first `limit` on the sphere.
pub fn osc_tower_2d(params: &SpaceParams, limit: i64) -> Result<Vec<SpectrumLine>> {
    let top = match osc_nmax_2d(params) {
        LevelBound::Unbounded => limit - 1,
        LevelBound::Finite(max) => max.min(limit - 1),
    };
    (0..=top).map(|n| osc_line_2d(params, n)).collect()
}

/// `E_C = −N_σ(N_σ+1)/(2r₀²) − γ²/(2(N_σ+1/2)²)`.
pub fn coulomb_energy_2d(gamma: f64, r0: f64, n_sigma: HalfInt) -> f64 {
    let n = n_sigma.value();
    -n * (n + 1.0) / (2.0 * r0 * r0) - gamma * gamma / (2.0 * (n + 0.5).powi(2))
}

/// `[sqrt(r₀γ) − (1/2 + σ)]`: the largest `N_σ − σ`; `None` when no level
/// survives.
pub fn coulomb_nmax(gamma: f64, r0: f64, sector: Sector) -> Result<Option<i64>> {
    coulomb_args(gamma, r0)?;
    let top = nudged_floor((r0 * gamma).sqrt() - 0.5 - sector.sigma().value());
    Ok((top >= 0.0).then_some(top as i64))
}

/// Level `(n_r, m_σ)` of the Coulomb problem in `sector`.
///
/// `|m_σ| − σ` must be a non-negative integer; the level is
/// `N_σ = n_r + |m_σ|` and carries the `2N_σ + 1` states of that `N_σ`.
pub fn coulomb_spectrum_2d(gamma: f64, r0: f64, sector: Sector, n_r: i64, m_sigma: HalfInt) -> Result<SpectrumLine> {
    let sigma = sector.sigma();
    if n_r < 0 {
        return Err(Error::QuantumNumber(format!("n_r = {n_r} is negative")));
    }
    if m_sigma.abs().integer_difference(sigma).is_none_or(|d| d < 0) {
        return Err(Error::QuantumNumber(format!(
            "|m_sigma| - sigma must be a non-negative integer (m_sigma = {m_sigma}, sigma = {sigma})"
        )));
    }
    let n_sigma = m_sigma.abs() + n_r;
    let index = n_sigma.integer_difference(sigma).expect("same sector");
    match coulomb_nmax(gamma, r0, sector)? {
        Some(max) if index <= max => {}
        max => {
            return Err(Error::Range {
                what: "N_sigma - sigma",
                value: index.to_string(),
                max: max.map_or("none (empty spectrum)".into(), |m| m.to_string()),
            })
        }
    }
    Ok(coulomb_level(
        gamma,
        r0,
        sector,
        n_sigma,
        vec![("sigma", sigma), ("n_r", HalfInt::from_int(n_r)), ("m_sigma", m_sigma), ("N_sigma", n_sigma)],
    ))
}

fn coulomb_level(
    gamma: f64,
    r0: f64,
    sector: Sector,
    n_sigma: HalfInt,
    qn: Vec<(&'static str, HalfInt)>,
) -> SpectrumLine {
    SpectrumLine::new(qn, coulomb_energy_2d(gamma, r0, n_sigma), coulomb_degeneracy_2d(n_sigma, sector))
}

/// Pairs `(n_r, m_σ)` with `n_r + |m_σ| = N_σ`, counted one by one.
pub fn coulomb_degeneracy_2d(n_sigma: HalfInt, sector: Sector) -> u64 {
    let sigma = sector.sigma();
    let top = n_sigma.doubled();
    (-top..=top)
        .step_by(2)
        .map(HalfInt::from_doubled)
        .filter(|m| m.abs().integer_difference(sigma).is_some_and(|d| d >= 0))
        .filter(|m| n_sigma.integer_difference(m.abs()).is_some_and(|n_r| n_r >= 0))
        .count() as u64
}

/// The tower `N_σ = σ, σ+1, …` up to [`coulomb_nmax`].
pub fn coulomb_tower_2d(gamma: f64, r0: f64, sector: Sector) -> Result<Vec<SpectrumLine>> {
    let sigma = sector.sigma();
    let Some(max) = coulomb_nmax(gamma, r0, sector)? else {
        return Ok(Vec::new());
    };
    Ok((0..=max)
        .map(|i| {
            let n_sigma = sigma + i;
            coulomb_level(gamma, r0, sector, n_sigma, vec![("sigma", sigma), ("N_sigma", n_sigma)])
        })
        .collect())
}

/// Both sides of `sqrt(1/(4r₀²) − 2εγ/r₀ − 2E_C) = 2γ/(N+1) − ε(N+1)/(2r₀)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interrelation {
    pub lhs: f64,
    pub rhs: f64,
}

impl Interrelation {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Evaluates the interrelation at fixed Coulomb data `(γ, r₀)` for the
/// level `N_σ`, with `E_C` from the Coulomb spectrum and `N + 1 = 2N_σ + 1`.
///
/// A negative right-hand side means the level has no oscillator partner
/// on a space of curvature `epsilon`.
pub fn interrelation_at_coupling(gamma: f64, r0: f64, curvature: Curvature, n_sigma: HalfInt) -> Result<Interrelation> {
    coulomb_args(gamma, r0)?;
    if n_sigma.doubled() < 0 {
        return Err(Error::QuantumNumber(format!("N_sigma = {n_sigma} is negative")));
    }
    let eps = curvature.sign();
    let k = (n_sigma.doubled() + 1) as f64;
    let rhs = 2.0 * gamma / k - eps * k / (2.0 * r0);
    if rhs < 0.0 {
        return Err(Error::PositivityViolation { level: format!("N_sigma = {n_sigma}"), rhs });
    }
    let e_c = coulomb_energy_2d(gamma, r0, n_sigma);
    let radicand = 1.0 / (4.0 * r0 * r0) - 2.0 * eps * gamma / r0 - 2.0 * e_c;
    Ok(Interrelation { lhs: radicand.max(0.0).sqrt(), rhs })
}

/// Interrelation residual for oscillator level `N`: `γ` and `r₀` come from
/// the level energy through the Bohlin parameter map, `E_C` from the
/// Coulomb spectrum at `N_σ = N/2`.
pub fn interrelation_residual(n: i64, params: &SpaceParams, sector: Sector) -> Result<f64> {
    if Sector::of_level(n) != sector {
        return Err(Error::QuantumNumber(format!(
            "level N = {n} belongs to sigma = {}, not {}",
            Sector::of_level(n).sigma(),
            sector.sigma()
        )));
    }
    let energy = osc_spectrum_2d(params, n)?;
    let rec = DualityRecord::from_energy(energy, params);
    let rel = interrelation_at_coupling(rec.gamma, rec.r0, params.curvature, HalfInt::from_doubled(n))?;
    Ok(rel.residual())
}

/// `|E_C(Coulomb spectrum at N/2) − E_C(Bohlin parameter map)|` for level `N`.
pub fn energy_map_residual(n: i64, params: &SpaceParams) -> Result<f64> {
    let energy = osc_spectrum_2d(params, n)?;
    let rec = DualityRecord::from_energy(energy, params);
    Ok((coulomb_energy_2d(rec.gamma, rec.r0, HalfInt::from_doubled(n)) - rec.coulomb_energy).abs())
}

/// Levels `N_σ` of `sector` (scanned up to index `scan`) whose
/// interrelation right-hand side is non-negative on the sphere.
pub fn sphere_positivity_survivors(gamma: f64, r0: f64, sector: Sector, scan: i64) -> Result<Vec<HalfInt>> {
    let mut out = Vec::new();
    for i in 0..=scan {
        let n_sigma = sector.sigma() + i;
        match interrelation_at_coupling(gamma, r0, Curvature::Sphere, n_sigma) {
            Ok(_) => out.push(n_sigma),
            Err(Error::PositivityViolation { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osc(curv: Curvature, r: f64, alpha: f64) -> SpaceParams {
        SpaceParams::oscillator(curv, r, alpha, 2).unwrap()
    }

    #[test]
    fn oscillator_examples() {
        let p = osc(Curvature::Pseudosphere, 1.0, 1.0);
        assert!((osc_spectrum_2d(&p, 0).unwrap() - (1.25f64.sqrt() - 0.5)).abs() < 1e-15);
        assert_eq!(osc_nmax_2d(&p), LevelBound::Finite(1));
        assert!(matches!(osc_spectrum_2d(&p, 2), Err(Error::Range { .. })));
        let flat = osc(Curvature::Sphere, 1e6, 1.0);
        assert!((osc_spectrum_2d(&flat, 0).unwrap() - 1.0).abs() < 1e-11);
        assert_eq!(osc_nmax_2d(&flat), LevelBound::Unbounded);
    }

    #[test]
    fn pseudosphere_cutoff_grows_with_alpha() {
        let mut last = -1;
        for k in 0..40 {
            let alpha = 0.25 * 1.3f64.powi(k);
            let LevelBound::Finite(n) = osc_nmax_2d(&osc(Curvature::Pseudosphere, 1.0, alpha)) else { panic!() };
            assert!(n >= last);
            last = n;
        }
        assert!(last > 1000);
    }

    #[test]
    fn oscillator_degeneracy() {
        let p = osc(Curvature::Sphere, 2.0, 1.0);
        for n in 0..20 {
            assert_eq!(osc_line_2d(&p, n).unwrap().degeneracy, (n + 1) as u64);
        }
    }

    #[test]
    fn coulomb_examples() {
        assert_eq!(coulomb_energy_2d(1.0, 1.0, HalfInt::ZERO), -2.0);
        let line = coulomb_spectrum_2d(4.0, 1.0, Sector::Even, 0, HalfInt::ZERO).unwrap();
        assert_eq!(line.energy, -32.0);
        assert_eq!(coulomb_nmax(4.0, 1.0, Sector::Even).unwrap(), Some(1));
        assert_eq!(coulomb_nmax(4.0, 1.0, Sector::Odd).unwrap(), Some(1));
        assert_eq!(coulomb_nmax(0.0, 1.0, Sector::Even).unwrap(), None);
        assert!(coulomb_tower_2d(0.0, 3.0, Sector::Odd).unwrap().is_empty());
        assert!(matches!(coulomb_spectrum_2d(4.0, 1.0, Sector::Even, 2, HalfInt::ZERO), Err(Error::Range { .. })));
        assert!(matches!(coulomb_spectrum_2d(4.0, 1.0, Sector::Even, 0, HalfInt::HALF), Err(Error::QuantumNumber(_))));
        assert!(matches!(coulomb_spectrum_2d(4.0, 1.0, Sector::Odd, 0, HalfInt::ZERO), Err(Error::QuantumNumber(_))));
    }

    #[test]
    fn vortex_shifts_levels() {
        let even = coulomb_tower_2d(9.0, 2.0, Sector::Even).unwrap();
        let odd = coulomb_tower_2d(9.0, 2.0, Sector::Odd).unwrap();
        for e in &even {
            for o in &odd {
                assert!((e.energy - o.energy).abs() > 1e-6);
            }
        }
        // half-integer N_σ sits between neighbouring integer levels
        assert!(even[0].energy < odd[0].energy && odd[0].energy < even[1].energy);
    }

    #[test]
    fn coulomb_degeneracy_counts() {
        for twice in 0..12 {
            let n_sigma = HalfInt::from_doubled(twice);
            let sector = if twice % 2 == 0 { Sector::Even } else { Sector::Odd };
            assert_eq!(coulomb_degeneracy_2d(n_sigma, sector), (twice + 1) as u64);
        }
    }

    #[test]
    fn flat_coulomb_limit() {
        let r0 = 1e9;
        for i in 0..5 {
            let n = HalfInt::from_int(i);
            let flat = -1.0 / (2.0 * (n.value() + 0.5).powi(2));
            assert!((coulomb_energy_2d(1.0, r0, n) - flat).abs() < 1e-12);
        }
    }

    #[test]
    fn interrelation_on_pseudosphere() {
        let p = osc(Curvature::Pseudosphere, 1.0, 1.0);
        for n in 0..=1 {
            assert!(interrelation_residual(n, &p, Sector::of_level(n)).unwrap() < 1e-12);
            assert!(energy_map_residual(n, &p).unwrap() < 1e-12);
        }
        assert!(matches!(interrelation_residual(1, &p, Sector::Even), Err(Error::QuantumNumber(_))));
    }

    #[test]
    fn sphere_positivity_matches_cutoff() {
        for (gamma, r0) in [(4.0, 1.0), (0.3, 2.0), (7.5, 3.1), (1.0, 1.0)] {
            for sector in Sector::BOTH {
                let survivors = sphere_positivity_survivors(gamma, r0, sector, 200).unwrap();
                let expected = coulomb_nmax(gamma, r0, sector).unwrap().map_or(0, |m| m + 1) as usize;
                assert_eq!(survivors.len(), expected);
                for (i, n) in survivors.iter().enumerate() {
                    assert_eq!(n.integer_difference(sector.sigma()), Some(i as i64));
                }
            }
        }
    }

    #[test]
    fn gamma_linear_in_energy() {
        let p = osc(Curvature::Sphere, 1.3, 0.4);
        let e = osc_spectrum_2d(&p, 3).unwrap();
        assert_eq!(DualityRecord::from_energy(2.0 * e, &p).gamma, 2.0 * DualityRecord::from_energy(e, &p).gamma);
    }

    #[test]
    fn sector_parsing() {
        assert_eq!("0".parse::<Sector>().unwrap(), Sector::Even);
        assert_eq!("1/2".parse::<Sector>().unwrap(), Sector::Odd);
        assert_eq!("0.5".parse::<Sector>().unwrap(), Sector::Odd);
        assert!(matches!("1".parse::<Sector>(), Err(Error::InvalidParams { name: "sigma", .. })));
    }
}
