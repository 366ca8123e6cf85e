//! Acceptance tolerances, one per identity.
//!
//! Every check in the crate reads its threshold from here so a grid
//! refinement study can rescale them in one place.

/// Closed-form Gaussian oracle vs quadrature (relative, max norm).
pub const QPFT_GAUSSIAN_ORACLE: f64 = 1e-6;
/// Forward then inverse transform (relative L2).
pub const QPFT_ROUND_TRIP: f64 = 1e-5;
/// Inner product preservation.
pub const QPFT_PARSEVAL: f64 = 1e-5;
/// Transform of a chirp convolution vs product of transforms.
pub const QPFT_CONVOLUTION: f64 = 1e-4;
/// Riemann-Lebesgue envelope at the outer frequency edge (absolute).
pub const RIEMANN_LEBESGUE_EDGE: f64 = 1e-6;

/// Windowed transform row vs transform of the windowed product.
pub const WQPFT_ROW_EQUIVALENCE: f64 = 1e-10;
/// Windowed transform at (0,1,0,0,0) vs the classical windowed transform.
pub const WFT_REDUCTION: f64 = 1e-10;
/// Each covariance identity (shift, modulation, parity, ...).
pub const WQPFT_IDENTITY: f64 = 1e-4;
/// Linearity holds to quadrature round-off.
pub const WQPFT_LINEARITY: f64 = 1e-12;
/// Windowed reconstruction round-trip (relative L2).
pub const WQPFT_RECONSTRUCTION: f64 = 1e-3;
/// Reproducing-kernel projection fixes range members.
pub const RK_FIXED_POINT: f64 = 1e-3;
/// Minimum projection gap for a map that is not in the range.
pub const RK_RANGE_GAP: f64 = 1e-1;
/// Energy (orthogonality) relation.
pub const ENERGY: f64 = 1e-3;

/// Relative slack allowed on every norm inequality.
pub const INEQUALITY_SLACK: f64 = 1e-6;

/// Spatial convolution theorem on coarse time-frequency grids.
pub const SPATIAL_CONVOLUTION: f64 = 1e-2;
/// Explicit spectral convolution vs product of transforms (coarse grid).
pub const SPECTRAL_CONVOLUTION: f64 = 5e-2;

/// Manufactured-solution recovery (relative L2).
pub const SOLVER_RECOVERY: f64 = 1e-3;
/// Transform-domain residual of the solver.
pub const SOLVER_RESIDUAL: f64 = 1e-5;
/// Trivial kernel h = 0 returns f.
pub const SOLVER_IDENTITY: f64 = 1e-6;
/// Threshold and Tikhonov division agree when |Psi| is O(1).
pub const SOLVER_MODE_AGREEMENT: f64 = 1e-4;

/// Default tolerance for a named identity, or `None` for unknown names.
pub fn for_identity(name: &str) -> Option<f64> {
    let tol = match name {
        "qpft.gaussian_oracle" => QPFT_GAUSSIAN_ORACLE,
        "qpft.round_trip" => QPFT_ROUND_TRIP,
        "qpft.parseval" => QPFT_PARSEVAL,
        "qpft.convolution_theorem" => QPFT_CONVOLUTION,
        "qpft.riemann_lebesgue" | "wqpft.riemann_lebesgue" => RIEMANN_LEBESGUE_EDGE,
        "qpft.chirp_norm_bound" => INEQUALITY_SLACK,
        "wqpft.row_equivalence" => WQPFT_ROW_EQUIVALENCE,
        "wqpft.wft_reduction" => WFT_REDUCTION,
        "wqpft.linearity" => WQPFT_LINEARITY,
        "wqpft.window_conjugate_linearity" => WQPFT_LINEARITY,
        "wqpft.time_shift"
        | "wqpft.modulation"
        | "wqpft.conjugation"
        | "wqpft.parity"
        | "wqpft.switching"
        | "wqpft.time_marginal" => WQPFT_IDENTITY,
        "wqpft.reconstruction" => WQPFT_RECONSTRUCTION,
        "wqpft.rk_fixed_point" => RK_FIXED_POINT,
        "wqpft.rk_range_gap" => RK_RANGE_GAP,
        "wqpft.energy" => ENERGY,
        "wqpft.minkowski_bound" => INEQUALITY_SLACK,
        "convolution.spatial" => SPATIAL_CONVOLUTION,
        "convolution.spectral" => SPECTRAL_CONVOLUTION,
        "convolution.sup_norm_bound"
        | "convolution.spectral_norm_bound"
        | "convolution.young_bound" => INEQUALITY_SLACK,
        "solver.identity" => SOLVER_IDENTITY,
        "solver.recovery" => SOLVER_RECOVERY,
        "solver.residual" => SOLVER_RESIDUAL,
        "solver.mode_agreement" => SOLVER_MODE_AGREEMENT,
        _ => return None,
    };
    Some(tol)
}
