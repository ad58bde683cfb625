//! Closed-form quantum spectra, quantum-number bookkeeping, cutoffs and
//! degeneracies.
//!
//! Half-integer quantum numbers are exact ([`HalfInt`]); cutoff brackets are
//! floors with a small upward nudge.

pub mod halfint;
pub mod line;
pub mod planar;
pub mod quad;

pub use halfint::HalfInt;
pub use line::{SpectrumLine, SpectrumTable};
pub use planar::{
    alpha_tilde, coulomb_degeneracy_2d, coulomb_energy_2d, coulomb_nmax, coulomb_spectrum_2d, coulomb_tower_2d,
    energy_map_residual, interrelation_at_coupling, interrelation_residual, osc_energy_2d, osc_line_2d, osc_nmax_2d,
    osc_spectrum_2d, osc_tower_2d, sphere_positivity_survivors, Interrelation, LevelBound, Sector,
};
pub use quad::{
    mic_degeneracy, mic_energy_level, mic_nmax, mic_spectrum, mic_tower, mic_turning_point, osc_degeneracy_4d,
    osc_energy_4d, osc_line_4d, osc_nmax_4d, osc_sector_degeneracy_4d, osc_spectrum_4d, osc_tower_4d, MicDegeneracy,
};
