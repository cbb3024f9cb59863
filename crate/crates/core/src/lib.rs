//! Inverses of infinite Hermitian positive definite Toeplitz matrices.
//!
//! Given a strictly positive spectral density phi on (0, 1), the infinite
//! Toeplitz matrix G with symbol phi has an explicit inverse: factor phi
//! through its Szego function S, expand psi = 1/S as a power series with
//! coefficients a_0, a_1, ..., and then
//!
//! ```text
//! (G^-1)_{k,j} = sum_{s=0}^{j-1} conj(a_s) a_{s + k - j}      (j <= k)
//! ```
//!
//! with the upper triangle filled in by Hermitian symmetry. This crate walks
//! the whole chain: special functions for the fractional Gaussian noise
//! density, endpoint-aware quadrature, the log-Fourier coefficients of phi,
//! the exponential-series recursions for S and 1/S, assembly of inverse
//! blocks, closed forms for banded densities, and an independent
//! finite-section oracle to validate everything against.

pub mod banded;
pub mod density;
pub mod error;
pub mod inverse;
pub mod io;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod transform;

pub use banded::{
    pentadiagonal_szego_coefficients, polynomial_conjecture_check, tridiagonal_inverse_block,
    tridiagonal_inverse_entry, tridiagonal_psi_coefficients, ConjectureReport, PentadiagonalCoeffs,
    TridiagonalSpec,
};
pub use density::{
    density_fourier_coefficient, fgn_autocovariance, fgn_normalizing_constant,
    szego_condition_report, BandedDensity, FgnDensity, SpectralDensity, SzegoReport,
};
pub use error::{Error, Result};
pub use inverse::{
    diagonal_limit, inverse_block, inverse_entry, q_polynomials, reproducing_kernel, whittle_block,
    whittle_entry, BlockSource, InverseBlock,
};
pub use io::{
    coefficients_json, oracle_report_json, parse_density_spec, render_matrix, Density, MatrixFormat,
};
pub use oracle::{
    compare_blocks, finite_section_inverse_block, finite_section_matrix, CholeskyFactor,
    HermitianMatrix, OracleReport,
};
pub use quadrature::EvalPoint;
pub use transform::{
    log_fourier_coefficients, psi_coefficients, reciprocal_series, series_reciprocal_residual,
    szego_coefficients, szego_eval_integral, CoefficientSeries, LogFourierCoeffs, SeriesRole,
};
