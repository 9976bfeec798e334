//! Numerical tolerances shared across modules.

/// Absolute tolerance for matrix-element comparisons (hermiticity,
/// idempotency, trace, norms).
pub const EQ: f64 = 1e-10;

/// Eigenvalues above `-PSD` count as nonnegative; also the cut-off used for
/// numerical rank.
pub const PSD: f64 = 1e-9;

/// Absolute dot-product tolerance for ray orthogonality.
pub const ORTH: f64 = 1e-9;

/// Lower bound on `<phi|rho|phi>` (and on `1 - <phi|rho|phi>`) for a
/// dispersion witness.
pub const WITNESS_EPS: f64 = 0.01;

/// Number of standard errors allowed between a Monte Carlo estimate and its
/// exact target.
pub const MC_SIGMAS: f64 = 5.0;
