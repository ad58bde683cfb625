//! Observables on phase space, their Wirtinger gradients, and the Poisson
//! bracket of the symplectic form `dπ∧dz + dπ̄∧dz̄`.

use num_complex::Complex64;

use super::phase::PhasePoint;
use crate::tolerances::FD_STEP;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Wirtinger derivatives `∂f/∂z^a`, `∂f/∂z̄^a`, `∂f/∂π_a`, `∂f/∂π̄_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient<const N: usize> {
    pub dz: [Complex64; N],
    pub dz_bar: [Complex64; N],
    pub dpi: [Complex64; N],
    pub dpi_bar: [Complex64; N],
}

impl<const N: usize> Gradient<N> {
    pub fn zero() -> Self {
        Self { dz: [ZERO; N], dz_bar: [ZERO; N], dpi: [ZERO; N], dpi_bar: [ZERO; N] }
    }

    /// Gradient of the complex conjugate `f̄`.
    pub fn conj(&self) -> Self {
        Self {
            dz: self.dz_bar.map(|c| c.conj()),
            dz_bar: self.dz.map(|c| c.conj()),
            dpi: self.dpi_bar.map(|c| c.conj()),
            dpi_bar: self.dpi.map(|c| c.conj()),
        }
    }

    fn entries(&self) -> impl Iterator<Item = &Complex64> {
        self.dz.iter().chain(&self.dz_bar).chain(&self.dpi).chain(&self.dpi_bar)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max |self − other| / max |self|`.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let diff = self.entries().zip(other.entries()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let scale = self.max_abs();
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

/// A (complex-valued) function on phase space.
///
/// The default gradient is the central finite-difference oracle; observables
/// with closed-form derivatives override it.
pub trait Observable<const N: usize> {
    fn value(&self, p: &PhasePoint<N>) -> Complex64;

    fn gradient(&self, p: &PhasePoint<N>) -> Gradient<N> {
        fd_gradient(|q| self.value(q), p, FD_STEP)
    }
}

/// Wraps a closure as an observable with finite-difference gradient.
pub struct FnObservable<F>(pub F);

impl<const N: usize, F> Observable<N> for FnObservable<F>
where
    F: Fn(&PhasePoint<N>) -> Complex64,
{
    fn value(&self, p: &PhasePoint<N>) -> Complex64 {
        (self.0)(p)
    }
}

/// Complex conjugate of an observable, with the conjugated gradient.
pub struct Conj<O>(pub O);

impl<const N: usize, O: Observable<N>> Observable<N> for Conj<O> {
    fn value(&self, p: &PhasePoint<N>) -> Complex64 {
        self.0.value(p).conj()
    }

    fn gradient(&self, p: &PhasePoint<N>) -> Gradient<N> {
        self.0.gradient(p).conj()
    }
}

/// Forces the finite-difference gradient of an observable.
pub struct FiniteDifference<'a, O: ?Sized>(pub &'a O);

impl<const N: usize, O: Observable<N> + ?Sized> Observable<N> for FiniteDifference<'_, O> {
    fn value(&self, p: &PhasePoint<N>) -> Complex64 {
        self.0.value(p)
    }
}

/// Central finite-difference Wirtinger gradient.
///
/// Each real coordinate `c` is displaced by `step · max(1, |c|)`; the real
/// partials are recombined as `∂/∂z = (∂ₓ − i∂ᵧ)/2`, `∂/∂z̄ = (∂ₓ + i∂ᵧ)/2`.
pub fn fd_gradient<const N: usize, F>(f: F, p: &PhasePoint<N>, step: f64) -> Gradient<N>
where
    F: Fn(&PhasePoint<N>) -> Complex64,
{
    let partial = |slot: usize, imag: bool| -> Complex64 {
        let coord = |q: &PhasePoint<N>| -> f64 {
            let c = if slot < N { q.z[slot] } else { q.pi[slot - N] };
            if imag {
                c.im
            } else {
                c.re
            }
        };
        let h = step * coord(p).abs().max(1.0);
        let shifted = |delta: f64| {
            let mut q = *p;
            let d = if imag { Complex64::new(0.0, delta) } else { Complex64::new(delta, 0.0) };
            if slot < N {
                q.z[slot] += d;
            } else {
                q.pi[slot - N] += d;
            }
            q
        };
        (f(&shifted(h)) - f(&shifted(-h))) / (2.0 * h)
    };
    let mut g = Gradient::zero();
    let i = Complex64::new(0.0, 1.0);
    for a in 0..N {
        let (dx, dy) = (partial(a, false), partial(a, true));
        g.dz[a] = (dx - i * dy) * 0.5;
        g.dz_bar[a] = (dx + i * dy) * 0.5;
        let (dx, dy) = (partial(N + a, false), partial(N + a, true));
        g.dpi[a] = (dx - i * dy) * 0.5;
        g.dpi_bar[a] = (dx + i * dy) * 0.5;
    }
    g
}

/// Bracket of two gradients: `Σ ∂f/∂π ∂g/∂z − ∂f/∂z ∂g/∂π + c.c. terms`.
pub fn bracket_of_gradients<const N: usize>(f: &Gradient<N>, g: &Gradient<N>) -> Complex64 {
    let mut acc = ZERO;
    for a in 0..N {
        acc += f.dpi[a] * g.dz[a] - f.dz[a] * g.dpi[a];
        acc += f.dpi_bar[a] * g.dz_bar[a] - f.dz_bar[a] * g.dpi_bar[a];
    }
    acc
}

/// Poisson bracket `{f, g}` at `p`, normalized so that `{π, z} = 1`.
pub fn poisson_bracket<const N: usize, F, G>(f: &F, g: &G, p: &PhasePoint<N>) -> Complex64
where
    F: Observable<N> + ?Sized,
    G: Observable<N> + ?Sized,
{
    bracket_of_gradients(&f.gradient(p), &g.gradient(p))
}

/// Coordinate observables, mainly for checking the canonical pairs.
#[derive(Debug, Clone, Copy)]
pub enum Coordinate {
    Z(usize),
    ZBar(usize),
    Pi(usize),
    PiBar(usize),
}

impl<const N: usize> Observable<N> for Coordinate {
    fn value(&self, p: &PhasePoint<N>) -> Complex64 {
        match *self {
            Coordinate::Z(a) => p.z[a],
            Coordinate::ZBar(a) => p.z[a].conj(),
            Coordinate::Pi(a) => p.pi[a],
            Coordinate::PiBar(a) => p.pi[a].conj(),
        }
    }

    fn gradient(&self, _p: &PhasePoint<N>) -> Gradient<N> {
        let one = Complex64::new(1.0, 0.0);
        let mut g = Gradient::zero();
        match *self {
            Coordinate::Z(a) => g.dz[a] = one,
            Coordinate::ZBar(a) => g.dz_bar[a] = one,
            Coordinate::Pi(a) => g.dpi[a] = one,
            Coordinate::PiBar(a) => g.dpi_bar[a] = one,
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::phase::{PlanarPoint, QuadPoint};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_pairs() {
        let p = QuadPoint::new([c(0.3, 0.1), c(-0.2, 0.5)], [c(1.0, -1.0), c(0.4, 0.2)]);
        for a in 0..2 {
            for b in 0..2 {
                let expected = if a == b { 1.0 } else { 0.0 };
                let pz = poisson_bracket(&Coordinate::Pi(a), &Coordinate::Z(b), &p);
                assert_eq!(pz, c(expected, 0.0));
                let pz_bar = poisson_bracket(&Coordinate::PiBar(a), &Coordinate::ZBar(b), &p);
                assert_eq!(pz_bar, c(expected, 0.0));
                assert_eq!(poisson_bracket(&Coordinate::Z(a), &Coordinate::ZBar(b), &p), c(0.0, 0.0));
                assert_eq!(poisson_bracket(&Coordinate::Pi(a), &Coordinate::ZBar(b), &p), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn finite_difference_gradient_of_polynomial() {
        // f = z² π̄ + z̄ ; ∂z = 2zπ̄, ∂z̄ = 1, ∂π = 0, ∂π̄ = z²
        let f = FnObservable(|q: &PlanarPoint| q.z[0] * q.z[0] * q.pi[0].conj() + q.z[0].conj());
        let p = PlanarPoint::new([c(0.4, -0.7)], [c(1.1, 0.3)]);
        let g = f.gradient(&p);
        let z = p.z[0];
        let pib = p.pi[0].conj();
        assert!((g.dz[0] - 2.0 * z * pib).norm() < 1e-9);
        assert!((g.dz_bar[0] - 1.0).norm() < 1e-9);
        assert!(g.dpi[0].norm() < 1e-9);
        assert!((g.dpi_bar[0] - z * z).norm() < 1e-9);
    }

    #[test]
    fn bracket_is_antisymmetric_and_conj_is_consistent() {
        let f = FnObservable(|q: &PlanarPoint| q.z[0] * q.pi[0] * q.pi[0]);
        let g = FnObservable(|q: &PlanarPoint| q.z[0].conj() * q.z[0] + q.pi[0]);
        let p = PlanarPoint::new([c(0.4, -0.7)], [c(1.1, 0.3)]);
        let fg = poisson_bracket(&f, &g, &p);
        let gf = poisson_bracket(&g, &f, &p);
        assert!((fg + gf).norm() < 1e-8);
        // conj({f, g}) = {f̄, ḡ}
        let conj_fg = poisson_bracket(&Conj(f), &Conj(g), &p);
        assert!((conj_fg - fg.conj()).norm() < 1e-8);
    }
}
