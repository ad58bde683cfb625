//! Bohlin and Kustaanheimo-Stiefel maps, their parameter maps, and the
//! reduced potentials.

pub mod bohlin;
pub mod constants;
pub mod ks;
pub mod potentials;

pub use bohlin::{
    bohlin_canonicity_residual, bohlin_constants_residual, bohlin_map, bohlin_params, bohlin_surface_check,
    point_on_energy_surface, DualityRecord,
};
pub use constants::MONOPOLE_BRACKET_CONSTANT;
pub use ks::{
    ks_map, level_set_minimum, measure_monopole_constant, mic_surface_check, point_on_level_set, reduced_bracket_check,
    ReducedPoint, ReducedTrajectory,
};
pub use potentials::{mic_potential_ambient, su2_potential_ambient};
