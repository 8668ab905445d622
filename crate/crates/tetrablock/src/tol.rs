//! Tolerance constants shared across the crate.
//!
//! Every comparison against a threshold goes through a named constant so the
//! error budget is visible in one place.  Inputs are O(1) throughout (points
//! of a bounded domain, contractions), which is what makes absolute
//! tolerances meaningful.

/// Accepted deviation from Hermitian symmetry in [`crate::Matrix2::psd_sqrt`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_EIGEN_SLACK: f64 = 1e-12;

/// `|x1*x2 - x3|` below this makes a point triangular.
pub const TRIANGULAR_TOL: f64 = 1e-10;

/// Tolerance for the distinguished-boundary conditions.
pub const DISTINGUISHED_TOL: f64 = 1e-10;

/// Membership margins smaller than this flag a report as borderline.
pub const BOUNDARY_BAND: f64 = 1e-6;

/// The definitional grid verdict requires the sampled minimum modulus to
/// exceed this floor.
pub const DEFINITION_TOL: f64 = 1e-4;

/// Samples whose inequality margin is within this band are excluded from
/// grid-oracle comparisons (grid resolution limits sharpness there).
pub const GRID_MARGIN: f64 = 1e-3;

/// Slack on the tangent feasibility inequality `max{|y1|,|y2|} + |y3| <= 1`.
pub const FEASIBLE_SLACK: f64 = 1e-12;

/// Slack for evaluating analytic discs on the closed unit circle.
pub const CIRCLE_EVAL_SLACK: f64 = 1e-9;

/// Accepted deviation from extremality `|y1| + |y3| = 1`.
pub const EXTREMAL_TOL: f64 = 1e-10;

/// Leaves with `|beta1| + |beta2|` above `1 -` this band are rejected; the
/// inverse hyperbolic tangent is ill-conditioned there.
pub const LEAF_BOUNDARY_BAND: f64 = 1e-6;

/// Beta coordinates divide by `1 - |x3|^2`; with `1 - |x3|` below this
/// guard the quotient amplifies rounding to O(1) junk, and any such point
/// is itself within ~4e-12 of the boundary, so it is treated as borderline
/// non-member instead.
pub const BETA_X3_GUARD: f64 = 1e-12;

/// Two canonical radii within this distance are treated as the same orbit.
pub const ORBIT_TOL: f64 = 1e-8;

/// Accepted residual for canonical-radius and normalization computations.
pub const RADIUS_TOL: f64 = 1e-9;

/// Denominators below this are treated as degenerate and routed to the
/// continuous-limit branch.
pub const DEGENERATE_GUARD: f64 = 1e-14;
