//! Four-dimensional oscillator and its U(1) reduction, the MIC-Kepler
//! problem on the three-dimensional pseudosphere.

use super::halfint::HalfInt;
use super::line::SpectrumLine;
use super::planar::{alpha_tilde, coulomb_args, LevelBound};
use crate::error::{Error, Result};
use crate::geometry::{Curvature, SpaceParams};
use crate::tolerances::nudged_floor;

/// `E = α̃(N+2) + ε((N+2)² − 2)/(2R₀²)` without range checks.
pub fn osc_energy_4d(params: &SpaceParams, n: i64) -> f64 {
    let k = (n + 2) as f64;
    let r = params.radius;
    alpha_tilde(params.coupling, r) * k + params.epsilon() * (k * k - 2.0) / (2.0 * r * r)
}

/// Unbounded on the sphere, `[α̃R₀²(1 + sqrt(1 + 2/(α̃R₀²)²))] − 2` on the
/// pseudosphere.
pub fn osc_nmax_4d(params: &SpaceParams) -> LevelBound {
    match params.curvature {
        Curvature::Sphere => LevelBound::Unbounded,
        Curvature::Pseudosphere => {
            let a = alpha_tilde(params.coupling, params.radius) * params.radius * params.radius;
            LevelBound::Finite(nudged_floor(a * (1.0 + (1.0 + 2.0 / (a * a)).sqrt())) as i64 - 2)
        }
    }
}

pub fn osc_spectrum_4d(params: &SpaceParams, n: i64) -> Result<f64> {
    if params.dim != 4 {
        return Err(Error::param("dim", format!("expected dim = 4, got {}", params.dim)));
    }
    if n < 0 {
        return Err(Error::QuantumNumber(format!("N = {n} is negative")));
    }
    let bound = osc_nmax_4d(params);
    if !bound.admits(n) {
        return Err(Error::Range { what: "N", value: n.to_string(), max: bound.to_string() });
    }
    Ok(osc_energy_4d(params, n))
}

/// States of the four-dimensional oscillator at level `N`:
/// `Σ (L+1)²` over `L = N, N−2, …`.
pub fn osc_degeneracy_4d(n: i64) -> u64 {
    (0..=n).filter(|l| (n - l) % 2 == 0).map(|l| ((l + 1) * (l + 1)) as u64).sum()
}

/// States with `J = 2s` at level `N`: `Σ (L+1)` over the `L` compatible
/// with `N` and `s`.
pub fn osc_sector_degeneracy_4d(n: i64, s: HalfInt) -> u64 {
    (0..=n).filter(|&l| (n - l) % 2 == 0 && admissible_charge(l, s)).map(|l| (l + 1) as u64).sum()
}

/// `2|s| ≤ L` and `L/2 − s` integer.
fn admissible_charge(l: i64, s: HalfInt) -> bool {
    s.abs().doubled() <= l && HalfInt::from_doubled(l).integer_difference(s).is_some()
}

/// Level `(n_r, L, s)` of the four-dimensional oscillator, `N = 2n_r + L`.
/// The line carries the `L + 1` states of fixed `(n_r, L, s)`.
pub fn osc_line_4d(params: &SpaceParams, n_r: i64, l: i64, s: HalfInt) -> Result<SpectrumLine> {
    if n_r < 0 || l < 0 {
        return Err(Error::QuantumNumber(format!("n_r = {n_r} and L = {l} must be non-negative")));
    }
    if !admissible_charge(l, s) {
        return Err(Error::QuantumNumber(format!(
            "charge s = {s} is not admissible for L = {l} (need 2|s| <= L, L/2 - s integer)"
        )));
    }
    let n = 2 * n_r + l;
    let energy = osc_spectrum_4d(params, n)?;
    let qn = vec![("N", HalfInt::from_int(n)), ("n_r", HalfInt::from_int(n_r)), ("L", HalfInt::from_int(l)), ("s", s)];
    Ok(SpectrumLine::new(qn, energy, (l + 1) as u64))
}

/// All levels on the pseudosphere, or the first `limit` on the sphere;
/// each line carries the full degeneracy of `N`.
pub fn osc_tower_4d(params: &SpaceParams, limit: i64) -> Result<Vec<SpectrumLine>> {
    let top = match osc_nmax_4d(params) {
        LevelBound::Unbounded => limit - 1,
        LevelBound::Finite(max) => max.min(limit - 1),
    };
    (0..=top)
        .map(|n| {
            Ok(SpectrumLine::new(vec![("N", HalfInt::from_int(n))], osc_spectrum_4d(params, n)?, osc_degeneracy_4d(n)))
        })
        .collect()
}

/// `E_C = −(k+|s|)(k+|s|+2)/(2r₀²) − γ²/(2(k+|s|+1)²)`.
pub fn mic_energy_level(gamma: f64, r0: f64, s: HalfInt, k: i64) -> f64 {
    let n = k as f64 + s.abs().value();
    -n * (n + 2.0) / (2.0 * r0 * r0) - gamma * gamma / (2.0 * (n + 1.0).powi(2))
}

/// `N_s^max` from `N_s^max + 1 = [sqrt(r₀γ − 1/(2r₀²))]`; `None` when the
/// radicand is negative.
pub fn mic_nmax(gamma: f64, r0: f64) -> Result<Option<i64>> {
    coulomb_args(gamma, r0)?;
    let radicand = r0 * gamma - 1.0 / (2.0 * r0 * r0);
    Ok((radicand >= 0.0).then(|| nudged_floor(radicand.sqrt()) as i64 - 1))
}

/// Largest `n = k + |s|` with `n + 1 ≤ sqrt(r₀γ)`, the range on which the
/// tower rises monotonically toward zero.
pub fn mic_turning_point(gamma: f64, r0: f64) -> Result<Option<i64>> {
    coulomb_args(gamma, r0)?;
    let top = nudged_floor((r0 * gamma).sqrt()) as i64 - 1;
    Ok((top >= 0).then_some(top))
}

/// Degeneracy of MIC-Kepler level `k` at charge `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicDegeneracy {
    /// `Σ (2l_s + 1)` over `l_s = |s|, …, k + |s|`, counted state by state.
    pub enumerated: u64,
    /// `k(k + |s| − 1)`, reported for comparison only.
    pub paper_formula: f64,
}

pub fn mic_degeneracy(k: i64, s: HalfInt) -> Result<MicDegeneracy> {
    if k < 0 {
        return Err(Error::QuantumNumber(format!("k = {k} is negative")));
    }
    let lo = s.abs();
    let mut enumerated = 0u64;
    for step in 0..=k {
        let l = lo + step;
        // azimuthal numbers −l, −l+1, …, l
        enumerated += (-l.doubled()..=l.doubled()).step_by(2).count() as u64;
    }
    let (kf, sf) = (k as f64, s.abs().value());
    // adding 0.0 turns the -0 at k = 0 into 0
    Ok(MicDegeneracy { enumerated, paper_formula: kf * (kf + sf - 1.0) + 0.0 })
}

/// Line `(s, k)` of the MIC-Kepler tower.
///
/// The energy is the closed form at any `k ≥ 0`; `within_printed_cutoff`
/// records whether `k + |s| ≤ N_s^max`. That cutoff is empty at small
/// `r₀γ` (for instance `γ = r₀ = 1`) even though the ground level is
/// bound, so it is reported rather than enforced.
pub fn mic_spectrum(gamma: f64, r0: f64, s: HalfInt, k: i64) -> Result<SpectrumLine> {
    coulomb_args(gamma, r0)?;
    let deg = mic_degeneracy(k, s)?;
    let n = s.abs() + k;
    let within = mic_nmax(gamma, r0)?.is_some_and(|max| n.doubled() <= 2 * max);
    let qn = vec![("s", s), ("k", HalfInt::from_int(k)), ("n", n)];
    let mut line = SpectrumLine::new(qn, mic_energy_level(gamma, r0, s, k), deg.enumerated);
    line.degeneracy_paper_formula = Some(deg.paper_formula);
    line.within_printed_cutoff = Some(within);
    Ok(line)
}

/// The tower `k = 0, 1, …` up to the turning point `k + |s| + 1 ≤ sqrt(r₀γ)`.
pub fn mic_tower(gamma: f64, r0: f64, s: HalfInt) -> Result<Vec<SpectrumLine>> {
    let Some(top) = mic_turning_point(gamma, r0)? else {
        return Ok(Vec::new());
    };
    // largest k with k + |s| ≤ top
    let max_k = (2 * top - s.abs().doubled()).div_euclid(2);
    (0..=max_k).map(|k| mic_spectrum(gamma, r0, s, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osc4(curv: Curvature, r: f64, alpha: f64) -> SpaceParams {
        SpaceParams::oscillator(curv, r, alpha, 4).unwrap()
    }

    #[test]
    fn oscillator_examples() {
        let sphere = osc4(Curvature::Sphere, 1.0, 1.0);
        assert!((osc_spectrum_4d(&sphere, 0).unwrap() - (2.0 * 1.25f64.sqrt() + 1.0)).abs() < 1e-15);
        let pseudo = osc4(Curvature::Pseudosphere, 1.0, 1.0);
        assert_eq!(osc_nmax_4d(&pseudo), LevelBound::Finite(0));
        assert!(matches!(osc_spectrum_4d(&pseudo, 1), Err(Error::Range { .. })));
        assert!(osc_spectrum_4d(&SpaceParams::oscillator(Curvature::Sphere, 1.0, 1.0, 2).unwrap(), 0).is_err());
    }

    #[test]
    fn quantum_number_checks() {
        let p = osc4(Curvature::Sphere, 1.0, 1.0);
        assert!(osc_line_4d(&p, 0, 2, HalfInt::from_int(1)).is_ok());
        assert!(osc_line_4d(&p, 0, 1, HalfInt::HALF).is_ok());
        assert!(matches!(osc_line_4d(&p, 0, 1, HalfInt::from_int(1)), Err(Error::QuantumNumber(_))));
        assert!(matches!(osc_line_4d(&p, 0, 2, HalfInt::HALF), Err(Error::QuantumNumber(_))));
    }

    #[test]
    fn oscillator_degeneracy_is_tetrahedral() {
        for n in 0..30 {
            assert_eq!(osc_degeneracy_4d(n), ((n + 1) * (n + 2) * (n + 3) / 6) as u64);
            let by_charge: u64 = (-n..=n).map(|twice| osc_sector_degeneracy_4d(n, HalfInt::from_doubled(twice))).sum();
            assert_eq!(by_charge, osc_degeneracy_4d(n));
        }
    }

    #[test]
    fn mic_examples() {
        let line = mic_spectrum(1.0, 1.0, HalfInt::ZERO, 0).unwrap();
        assert_eq!(line.energy, -0.5);
        assert_eq!(line.within_printed_cutoff, Some(false));
        assert_eq!(mic_nmax(1.0, 1.0).unwrap(), Some(-1));
        assert_eq!(mic_tower(1.0, 1.0, HalfInt::ZERO).unwrap().len(), 1);
        assert_eq!(mic_degeneracy(0, HalfInt::ZERO).unwrap().enumerated, 1);
        let d = mic_degeneracy(1, HalfInt::HALF).unwrap();
        assert_eq!(d.enumerated, 6);
        assert_eq!(d.paper_formula, 0.5);
    }

    #[test]
    fn mic_degeneracy_closed_form() {
        // Σ_{l=|s|}^{k+|s|} (2l+1) = (k+1)(k+2|s|+1)
        for twice in 0..8 {
            let s = HalfInt::from_doubled(twice);
            for k in 0..15 {
                let expected = ((k + 1) * (k + twice + 1)) as u64;
                assert_eq!(mic_degeneracy(k, s).unwrap().enumerated, expected);
                assert_eq!(mic_degeneracy(k, -s).unwrap().enumerated, expected);
            }
        }
    }

    #[test]
    fn reduction_preserves_state_count() {
        // MIC level (s, k) collects the oscillator states with J = 2s at N = 2(k + |s|)
        for twice in -4..=4 {
            let s = HalfInt::from_doubled(twice);
            for k in 0..10 {
                let n = 2 * k + twice.abs();
                assert_eq!(osc_sector_degeneracy_4d(n, s), mic_degeneracy(k, s).unwrap().enumerated);
            }
        }
    }

    #[test]
    fn zero_charge_is_pseudospherical_kepler() {
        for k in 0..6 {
            let n = k as f64;
            let expected = -n * (n + 2.0) / (2.0 * 4.0) - 9.0 / (2.0 * (n + 1.0).powi(2));
            assert!((mic_energy_level(3.0, 2.0, HalfInt::ZERO, k) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn flat_limits() {
        for k in 0..5 {
            let s = HalfInt::HALF;
            let flat = -1.0 / (2.0 * (k as f64 + 1.5).powi(2));
            assert!((mic_energy_level(1.0, 1e9, s, k) - flat).abs() < 1e-12);
        }
        let p = osc4(Curvature::Sphere, 1e6, 1.0);
        for n in 0..10 {
            let e = osc_spectrum_4d(&p, n).unwrap();
            assert!((e / (n + 2) as f64 - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn tower_is_monotone() {
        for (gamma, r0) in [(4.0, 4.0), (10.0, 2.5), (1.0, 30.0)] {
            for twice in 0..4 {
                let tower = mic_tower(gamma, r0, HalfInt::from_doubled(twice)).unwrap();
                for w in tower.windows(2) {
                    assert!(w[1].energy > w[0].energy && w[1].energy < 0.0);
                }
                if let Some(last) = tower.last() {
                    let n = last.quantum_number("n").unwrap().value();
                    assert!(n + 1.0 <= (r0 * gamma).sqrt() + 1e-12);
                    assert!(n + 2.0 > (r0 * gamma).sqrt());
                }
            }
        }
    }
}
