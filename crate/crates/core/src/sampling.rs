//! Seeded random phase points for property checks.
//!
//! Coordinates are drawn uniformly (by area/volume) in the shell
//! `0.05 ≤ |z| ≤ 0.8`, away from the origin and from `|z| = 1`; every real
//! momentum component is uniform in `[−2, 2]`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::phase::PhasePoint;

pub const INNER_RADIUS: f64 = 0.05;
pub const OUTER_RADIUS: f64 = 0.8;
pub const MOMENTUM_BOUND: f64 = 2.0;

pub struct PhaseSampler {
    rng: ChaCha8Rng,
    inner: f64,
    outer: f64,
    momentum: f64,
}

impl PhaseSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(seed, INNER_RADIUS, OUTER_RADIUS, MOMENTUM_BOUND)
    }

    pub fn with_bounds(seed: u64, inner: f64, outer: f64, momentum: f64) -> Self {
        assert!(0.0 <= inner && inner < outer, "invalid shell [{inner}, {outer}]");
        Self { rng: ChaCha8Rng::seed_from_u64(seed), inner, outer, momentum }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform point of the shell `inner ≤ |z| ≤ outer` in `ℂᴺ`.
    pub fn coordinates<const N: usize>(&mut self) -> [Complex64; N] {
        let dim = 2 * N as i32;
        // direction: rejection sample the unit ball, then normalize
        let dir: Vec<f64> = loop {
            let v: Vec<f64> = (0..2 * N).map(|_| self.rng.gen_range(-1.0..1.0)).collect();
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                break v.into_iter().map(|x| x / n).collect();
            }
        };
        let (lo, hi) = (self.inner.powi(dim), self.outer.powi(dim));
        let r = self.rng.gen_range(lo..=hi).powf(1.0 / dim as f64);
        std::array::from_fn(|a| Complex64::new(r * dir[2 * a], r * dir[2 * a + 1]))
    }

    pub fn momenta<const N: usize>(&mut self) -> [Complex64; N] {
        let b = self.momentum;
        std::array::from_fn(|_| Complex64::new(self.rng.gen_range(-b..=b), self.rng.gen_range(-b..=b)))
    }

    pub fn point<const N: usize>(&mut self) -> PhasePoint<N> {
        let z = self.coordinates();
        let pi = self.momenta();
        PhasePoint { z, pi }
    }

    pub fn angle(&mut self) -> f64 {
        self.rng.gen_range(0.0..std::f64::consts::TAU)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_stay_in_shell_and_box() {
        let mut s = PhaseSampler::new(1);
        for _ in 0..1000 {
            let p: PhasePoint<2> = s.point();
            let r = p.z_norm_sq().sqrt();
            assert!((INNER_RADIUS..=OUTER_RADIUS + 1e-15).contains(&r));
            for c in p.pi {
                assert!(c.re.abs() <= MOMENTUM_BOUND && c.im.abs() <= MOMENTUM_BOUND);
            }
        }
    }

    #[test]
    fn same_seed_same_points() {
        let mut a = PhaseSampler::new(7);
        let mut b = PhaseSampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.point::<1>(), b.point::<1>());
        }
    }
}
