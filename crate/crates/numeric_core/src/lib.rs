//! Dense complex linear algebra kernel.
//!
//! Every matrix-valued quantity in the workspace is a [`CMatrix`]: a row-major
//! dense matrix of [`C64`] entries. On top of it this crate provides Kronecker
//! products, partial traces over tensor factors, Hermitian eigendecompositions,
//! least-squares solves, null spaces, the pullback of a matrix through a set of
//! representation matrices, and PSD square roots and inverses.
//!
//! Hermitian spectra and singular value decompositions delegate to `nalgebra`.

pub mod error;
pub mod linalg;
pub mod matrix;
pub mod quantum;
pub mod tol;

pub use error::NumericError;
pub use linalg::{
    hermitian_eig, hermitian_eigenvalues, lstsq, null_space, psd_inverse, psd_sqrt, pullback,
    solve_linear, EigReport, LstsqReport,
};
pub use matrix::{c64, CMatrix, C64};
pub use quantum::{
    is_psd, min_eigenvalue, partial_trace, permute_sites, trace_distance, trace_distance_bound,
    trace_norm,
};
