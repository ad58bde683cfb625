//! Frozen normalization constants of the reduced structures.

/// `c` in `{p_i, p_j} = c · s · ε_ijk u_k / |u|³` for the Kustaanheimo-Stiefel
/// variables, with `s = J/2`.
///
/// Derivation: write `u = z σ z̄`, `p = Re(z σ π)/(z z̄)` and use the bracket
/// with `{π_a, z^b} = δ_a^b`. The Pauli identity
/// `σ_i σ_j = δ_ij + i ε_ijk σ_k` turns `{p_i, p_j}` into
/// `ε_ijk (u_k/|u|³) · i(zπ − z̄π̄)/2`, so `c = 1` once `s = J/2` is
/// substituted. The value was measured by brute-force finite-difference
/// brackets (see `measure_monopole_constant`) and agrees to 1e-9; the
/// tests assert it at random points.
pub const MONOPOLE_BRACKET_CONSTANT: f64 = 1.0;
