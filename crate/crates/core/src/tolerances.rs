//! Numerical thresholds shared across modules.
//!
//! The constants are the defaults; [`Tolerances`] carries an overridable copy
//! for callers (the command-line driver reads overrides from its config).

/// Pseudosphere points with `|z z̄ - 1|` below this are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-9;

/// Integration aborts when a singular factor (`1 ∓ z z̄`, `|w|`) drops below this.
pub const SINGULARITY_GUARD: f64 = 1e-8;

/// Upward nudge applied before flooring cutoff formulas.
pub const FLOOR_NUDGE: f64 = 1e-12;

/// Relative step of central finite differences.
pub const FD_STEP: f64 = 1e-6;

/// Tolerance on the ambient constraint `ε x² + x_last² = R₀²` (relative).
pub const AMBIENT_CONSTRAINT: f64 = 1e-12;

/// Tolerance used when a caller asserts that a point lies on a level set.
pub const LEVEL_SET: f64 = 1e-12;

/// Pseudosphere membership tolerance for ambient potentials (relative to r₀²).
pub const PSEUDOSPHERE_MEMBERSHIP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub boundary_guard: f64,
    pub singularity_guard: f64,
    pub floor_nudge: f64,
    pub fd_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            boundary_guard: BOUNDARY_GUARD,
            singularity_guard: SINGULARITY_GUARD,
            floor_nudge: FLOOR_NUDGE,
            fd_step: FD_STEP,
        }
    }
}

/// Floor with a small upward nudge, so that `1.9999999999997` floors to 2.
pub fn nudged_floor(x: f64) -> f64 {
    (x + FLOOR_NUDGE).floor()
}
