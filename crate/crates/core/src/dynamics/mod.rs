//! Phase space, Hamiltonians, conserved quantities, Poisson brackets and
//! trajectory integration.

pub mod algebra;
pub mod hamiltonians;
pub mod integrate;
pub mod observable;
pub mod phase;
pub mod trajectory;

pub use algebra::{
    coulomb_algebra_residual, cubic_algebra_residual, energy_surface_residual, AlgebraResidual, GradientMode,
};
pub use hamiltonians::{
    angular_momentum, coulomb_hamiltonian, coulomb_invariants, hidden_invariant, osc_hamiltonian,
    oscillator_invariants, rotation_generators, runge_lenz, AngularMomentum, CoulombHamiltonian, HiddenInvariant,
    InvariantSet, OscillatorHamiltonian, RotationGenerators, RotationVector, RungeLenz,
};
pub use integrate::{
    circular_orbit, integrate, integrate_with, radial_period, HamiltonianSystem, IntegratorConfig, PlanarCoulomb,
    PlanarOscillator, QuadOscillator,
};
pub use observable::{poisson_bracket, Conj, Coordinate, FiniteDifference, FnObservable, Gradient, Observable};
pub use phase::{PhasePoint, PlanarPoint, QuadPoint};
pub use trajectory::{drift_report, DriftReport, Trajectory};

/// Which Hamiltonian flow to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    Oscillator2d,
    Oscillator4d,
    Coulomb2d,
}

impl std::str::FromStr for SystemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "osc2d" => Ok(SystemKind::Oscillator2d),
            "osc4d" => Ok(SystemKind::Oscillator4d),
            "coulomb2d" => Ok(SystemKind::Coulomb2d),
            other => Err(format!("unknown system `{other}` (expected osc2d, osc4d or coulomb2d)")),
        }
    }
}
