//! Oscillator and Coulomb systems on spheres and pseudospheres.
//!
//! Everything is written in stereographic coordinates. The crate covers
//! the classical side (Hamiltonians, conserved quantities, Poisson
//! brackets, adaptive trajectory integration), the two duality maps that
//! relate the systems (Bohlin for the plane, Kustaanheimo-Stiefel for the
//! four-dimensional oscillator and its U(1) reduction to MIC-Kepler), and
//! the closed-form quantum spectra with their quantum-number bookkeeping.
//!
//! Bracket orientation: `{π, z} = 1`, equations of motion `ż = ∂H/∂π`,
//! `π̇ = −∂H/∂z`, so that `ḟ = {H, f}`.

pub mod duality;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod io;
pub mod sampling;
pub mod spectra;
pub mod tolerances;

pub use error::{Error, Result};
pub use geometry::{AmbientPoint, Curvature, SpaceParams};
pub use num_complex::Complex64;
