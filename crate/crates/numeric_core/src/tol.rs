//! Library-wide default tolerances.
//!
//! The algebra data consists of exact rationals and surds, so double precision
//! rounding dominates every residual.

/// Residual allowed for structural identities (axioms, derived identities).
pub const STRUCTURAL: f64 = 1e-10;

/// Gap below which two eigenvalues are clustered together.
pub const EIG_CLUSTER: f64 = 1e-8;

/// Residual allowed when pulling a matrix back through a representation.
pub const PULLBACK: f64 = 1e-9;

/// Singular values below this (relative to the largest) count as zero.
pub const RANK: f64 = 1e-9;

/// Deviation from the adjoint tolerated by Hermitian routines.
pub const HERMITIAN: f64 = 1e-10;

/// Allowed negative eigenvalue when testing complete positivity and PSD-ness.
pub const PSD: f64 = 1e-9;
