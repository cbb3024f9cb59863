//! Closed forms for banded densities.
//!
//! When phi is a strictly positive trigonometric polynomial of order m, its
//! Szego function is an exact polynomial of degree m (spectral
//! factorization), and for small m everything downstream collapses to closed
//! forms. The tridiagonal case (m = 1) is worked out completely; the
//! pentadiagonal case (m = 2) gets its coefficients in closed form given the
//! constant term; and [`polynomial_conjecture_check`] verifies numerically,
//! for any banded density, that the computed S series really does truncate
//! at degree m.

use crate::density::BandedDensity;
use crate::error::{Error, Result};
use crate::inverse::{BlockSource, InverseBlock};
use crate::transform::{self, CoefficientSeries, SeriesRole};
use num_complex::Complex64;

// ---------------------------------------------------------------------------
// Tridiagonal (m = 1)
// ---------------------------------------------------------------------------

/// The density phi(t) = 1 + q e^{2 pi i t} + conj(q) e^{-2 pi i t}, positive
/// exactly when |q| < 1/2. Precomputes the constant term of its Szego
/// polynomial, c_0 = sqrt((1 + sqrt(1 - 4 |q|^2)) / 2); the full polynomial
/// is S(z) = c_0 + (q / c_0) z.
#[derive(Clone, Copy, Debug)]
pub struct TridiagonalSpec {
    q: Complex64,
    c0: f64,
}

impl TridiagonalSpec {
    pub fn new(q: Complex64) -> Result<Self> {
        if !q.re.is_finite() || !q.im.is_finite() {
            return Err(Error::InvalidInput("coefficient must be finite".into()));
        }
        let m = q.norm();
        // Strictly inside the disk, with a margin: at |q| = 1/2 the density
        // touches zero and c0^4 - |q|^2 degenerates.
        if m >= 0.5 - 1e-12 {
            return Err(Error::Domain(format!(
                "tridiagonal density needs |q| < 1/2 for positivity, got |q| = {m}"
            )));
        }
        let c0 = (0.5 * (1.0 + (1.0 - 4.0 * m * m).sqrt())).sqrt();
        Ok(TridiagonalSpec { q, c0 })
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// The density itself (validated positive by construction).
    pub fn density(&self) -> BandedDensity {
        BandedDensity::new(vec![self.q]).expect("positivity follows from |q| < 1/2")
    }
}

/// Closed-form entry of the infinite inverse, indices 1-based:
///
/// ```text
/// (G^-1)_{k,j} = (-1)^{k-j} q^{k-j} c0^{2(1-k-j)}
///                * (c0^{4j} - |q|^{2j}) / (c0^4 - |q|^2)        (j <= k)
/// ```
///
/// evaluated in the overflow-free arrangement
/// `(-q/c0^2)^{k-j} * c0^{-2} * (1 - r^j)/(1 - r)` with `r = |q|^2/c0^4 < 1`.
pub fn tridiagonal_inverse_entry(spec: &TridiagonalSpec, k: usize, j: usize) -> Result<Complex64> {
    if k == 0 || j == 0 {
        return Err(Error::OutOfRange("matrix indices are 1-based".into()));
    }
    if j > k {
        return Ok(tridiagonal_inverse_entry(spec, j, k)?.conj());
    }
    let c0sq = spec.c0 * spec.c0;
    let r = spec.q.norm_sqr() / (c0sq * c0sq);
    let geom = (1.0 - r.powi(j as i32)) / (1.0 - r);
    let ratio = -spec.q / c0sq;
    Ok(ratio.powu((k - j) as u32) * (geom / c0sq))
}

/// Closed-form 1/S coefficients a_i = (1/c0) (-q/c0^2)^i, i = 0..=order.
pub fn tridiagonal_psi_coefficients(
    spec: &TridiagonalSpec,
    order: usize,
) -> Result<CoefficientSeries> {
    let ratio = -spec.q / (spec.c0 * spec.c0);
    let mut a = Vec::with_capacity(order + 1);
    let mut v = Complex64::new(1.0 / spec.c0, 0.0);
    for _ in 0..=order {
        a.push(v);
        v *= ratio;
    }
    CoefficientSeries::from_coeffs(a, SeriesRole::SzegoInverse, 0.0)
}

/// The leading n x n inverse block straight from the closed form.
pub fn tridiagonal_inverse_block(spec: &TridiagonalSpec, n: usize) -> Result<InverseBlock> {
    if n == 0 {
        return Err(Error::InvalidInput("block size must be at least 1".into()));
    }
    let spec = *spec;
    InverseBlock::from_lower_fn(n, BlockSource::ClosedForm, move |k, j| {
        tridiagonal_inverse_entry(&spec, k, j).expect("indices are in range")
    })
}

// ---------------------------------------------------------------------------
// Pentadiagonal (m = 2)
// ---------------------------------------------------------------------------

/// Szego polynomial coefficients of a pentadiagonal density.
#[derive(Clone, Copy, Debug)]
pub struct PentadiagonalCoeffs {
    pub c0: f64,
    pub c1: Complex64,
    pub c2: Complex64,
}

/// Closed forms for the degree-1 and degree-2 coefficients of the Szego
/// polynomial of phi(t) = 1 + sum_{k=1,2} (q_k e^{2 pi i k t} + c.c.), given
/// the constant term c_0 (itself available from the log-Fourier pipeline as
/// exp(-u_0)):
///
/// ```text
/// c_1 = c_0 (c_0^2 q_1 - q_2 conj(q_1)) / (c_0^4 - |q_2|^2)
/// c_2 = q_2 / c_0
/// ```
pub fn pentadiagonal_szego_coefficients(
    q1: Complex64,
    q2: Complex64,
    c0: f64,
) -> Result<PentadiagonalCoeffs> {
    if c0 <= 0.0 || !c0.is_finite() {
        return Err(Error::Domain(format!("c0 must be positive, got {c0}")));
    }
    let c0sq = c0 * c0;
    let den = c0sq * c0sq - q2.norm_sqr();
    if den.abs() < 1e-14 {
        return Err(Error::Domain(
            "degenerate pentadiagonal coefficients: c0^4 - |q2|^2 vanishes".into(),
        ));
    }
    Ok(PentadiagonalCoeffs {
        c0,
        c1: c0 * (c0sq * q1 - q2 * q1.conj()) / den,
        c2: q2 / c0,
    })
}

// ---------------------------------------------------------------------------
// Polynomial truncation check
// ---------------------------------------------------------------------------

/// Outcome of checking that a banded density's Szego series truncates at its
/// band order.
#[derive(Clone, Copy, Debug)]
pub struct ConjectureReport {
    /// Band order m of the density.
    pub band_order: usize,
    /// Order the S series was computed to.
    pub series_order: usize,
    /// max |c_k| over m < k <= series_order.
    pub max_tail_coefficient: f64,
    /// Threshold the tail was held against.
    pub tail_tol: f64,
    /// `max_tail_coefficient <= tail_tol`.
    pub is_polynomial: bool,
}

/// Runs the full pipeline for a banded density and measures how exactly the
/// computed Szego series truncates to a polynomial of degree m.
///
/// The log-Fourier tolerance is tied two orders of magnitude below `tail_tol`
/// (floored at 1e-13) so quadrature noise cannot fake a verdict.
pub fn polynomial_conjecture_check(
    density: &BandedDensity,
    series_order: usize,
    tail_tol: f64,
) -> Result<ConjectureReport> {
    if tail_tol <= 0.0 || !tail_tol.is_finite() {
        return Err(Error::InvalidInput(format!(
            "tail tolerance must be positive and finite, got {tail_tol}"
        )));
    }
    let m = density.order();
    if series_order <= m {
        return Err(Error::InvalidInput(format!(
            "series order {series_order} leaves no tail beyond band order {m}"
        )));
    }
    let quad_tol = (tail_tol / 100.0).clamp(1e-13, 1e-10);
    let u = transform::log_fourier_coefficients(density, series_order, quad_tol)?;
    let s = transform::szego_coefficients(&u, series_order)?;
    let max_tail = s.coeffs()[m + 1..]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    Ok(ConjectureReport {
        band_order: m,
        series_order,
        max_tail_coefficient: max_tail,
        tail_tol,
        is_polynomial: max_tail <= tail_tol,
    })
}
