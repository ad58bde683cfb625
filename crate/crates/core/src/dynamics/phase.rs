use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Complex stereographic coordinates `z^a` and conjugate momenta `π_a`.
///
/// `N = 1` describes the planar systems (oscillator or Coulomb, where the
/// Coulomb side reads the fields as `(w, p)`), `N = 2` the four-dimensional
/// oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint<const N: usize> {
    pub z: [Complex64; N],
    pub pi: [Complex64; N],
}

pub type PlanarPoint = PhasePoint<1>;
pub type QuadPoint = PhasePoint<2>;

impl<const N: usize> PhasePoint<N> {
    pub fn new(z: [Complex64; N], pi: [Complex64; N]) -> Self {
        Self { z, pi }
    }

    pub fn zero() -> Self {
        Self { z: [Complex64::new(0.0, 0.0); N], pi: [Complex64::new(0.0, 0.0); N] }
    }

    /// `z z̄ = Σ |z^a|²`.
    pub fn z_norm_sq(&self) -> f64 {
        self.z.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `π π̄ = Σ |π_a|²`.
    pub fn pi_norm_sq(&self) -> f64 {
        self.pi.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.z.iter().chain(self.pi.iter()).all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Phase rotation `z → e^{iθ} z`, `π → e^{−iθ} π` (the flow of `J`).
    pub fn rotated(&self, theta: f64) -> Self {
        let ph = Complex64::from_polar(1.0, theta);
        let mut out = *self;
        for a in 0..N {
            out.z[a] *= ph;
            out.pi[a] *= ph.conj();
        }
        out
    }

    /// Real coordinates `(Re z…, Im z…, Re π…, Im π…)`.
    pub fn to_real(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(4 * N);
        v.extend(self.z.iter().map(|c| c.re));
        v.extend(self.z.iter().map(|c| c.im));
        v.extend(self.pi.iter().map(|c| c.re));
        v.extend(self.pi.iter().map(|c| c.im));
        v
    }

    pub fn from_real(v: &[f64]) -> Self {
        assert_eq!(v.len(), 4 * N, "expected {} real coordinates", 4 * N);
        let mut p = Self::zero();
        for a in 0..N {
            p.z[a] = Complex64::new(v[a], v[N + a]);
            p.pi[a] = Complex64::new(v[2 * N + a], v[3 * N + a]);
        }
        p
    }
}

impl<const N: usize> Add for PhasePoint<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for a in 0..N {
            self.z[a] += rhs.z[a];
            self.pi[a] += rhs.pi[a];
        }
        self
    }
}

impl<const N: usize> Sub for PhasePoint<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for a in 0..N {
            self.z[a] -= rhs.z[a];
            self.pi[a] -= rhs.pi[a];
        }
        self
    }
}

impl<const N: usize> Mul<f64> for PhasePoint<N> {
    type Output = Self;
    fn mul(mut self, k: f64) -> Self {
        for a in 0..N {
            self.z[a] *= k;
            self.pi[a] *= k;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_layout_round_trips() {
        let p = QuadPoint::new(
            [Complex64::new(1.0, 2.0), Complex64::new(3.0, 4.0)],
            [Complex64::new(5.0, 6.0), Complex64::new(7.0, 8.0)],
        );
        let v = p.to_real();
        assert_eq!(v, vec![1.0, 3.0, 2.0, 4.0, 5.0, 7.0, 6.0, 8.0]);
        assert_eq!(QuadPoint::from_real(&v), p);
    }
}
