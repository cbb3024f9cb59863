//! From a density to its Szego function: log-Fourier coefficients and the
//! power series of S and 1/S.
//!
//! The chain is
//!
//! ```text
//! u_0 = -(1/2) int log phi,   u_k = -int e^{-2 pi i k t} log phi(t) dt  (k >= 1)
//! psi(z) = 1/S(z) = exp( u_0 + sum_{k>=1} u_k z^k ) = sum a_n z^n
//! S(z)           = exp( -u_0 - sum_{k>=1} u_k z^k ) = sum c_n z^n
//! ```
//!
//! and the a_n are what the inverse-block assembly consumes. The u_k are all
//! computed from a single batched evaluation of log phi on a frozen
//! quadrature grid (one density evaluation per node, one rotor multiply per
//! node per coefficient), with a per-coefficient error indicator from nested
//! 20/40-point rules.

use crate::density::SpectralDensity;
use crate::error::{Error, Result};
use crate::quadrature::{self, EvalPoint, FixedGrid};
use num_complex::Complex64;
use rayon::prelude::*;

/// Largest supported series order; keeps grid sizes and recursion costs sane.
pub const MAX_ORDER: usize = 4096;

/// Dyadic depth of the frozen grid used for the batched coefficients. Rings
/// of this depth resolve any integrable log/power endpoint behavior the
/// supported densities produce to well below 1e-12 absolute.
const GRID_DEPTH: u32 = 40;

// ---------------------------------------------------------------------------
// Log-Fourier coefficients
// ---------------------------------------------------------------------------

/// The numbers u_0, ..., u_N defined above, tagged with the quadrature
/// tolerance they were computed to.
#[derive(Clone, Debug)]
pub struct LogFourierCoeffs {
    u: Vec<Complex64>,
    quad_tol: f64,
}

impl LogFourierCoeffs {
    /// Wraps externally produced values (closed forms, tests). `u[0]` must be
    /// real: it is half the log-integral of a positive function.
    pub fn from_values(u: Vec<Complex64>, quad_tol: f64) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::InvalidInput("need at least u_0".into()));
        }
        if u.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(
                "non-finite log-Fourier coefficient".into(),
            ));
        }
        if u[0].im.abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "u_0 must be real, got imaginary part {:e}",
                u[0].im
            )));
        }
        let mut u = u;
        u[0] = Complex64::new(u[0].re, 0.0);
        Ok(LogFourierCoeffs { u, quad_tol })
    }

    /// Highest index N.
    pub fn order(&self) -> usize {
        self.u.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.u
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }
}

/// Computes u_0, ..., u_n for a density by batched quadrature.
///
/// Every coefficient individually satisfies the nested-rule error indicator
/// `<= tol`; otherwise the whole call fails with the worst indicator in
/// [`Error::QuadratureNonConvergence`].
pub fn log_fourier_coefficients(
    d: &dyn SpectralDensity,
    n: usize,
    tol: f64,
) -> Result<LogFourierCoeffs> {
    log_fourier_on_grid(d, n, tol, GRID_DEPTH, 1.0)
}

/// Grid-parametrized core of [`log_fourier_coefficients`]; `width_factor`
/// scales the interior panel cap (tests use it to double the panel count and
/// verify grid independence).
pub(crate) fn log_fourier_on_grid(
    d: &dyn SpectralDensity,
    n: usize,
    tol: f64,
    depth: u32,
    width_factor: f64,
) -> Result<LogFourierCoeffs> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    if n > MAX_ORDER {
        return Err(Error::InvalidInput(format!(
            "order {n} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    let grid = FixedGrid::new(depth, quadrature::width_cap(n) * width_factor);

    // One (parallel) pass of log phi over each node set.
    let log_at = |nodes: &[(EvalPoint, f64)]| -> Result<Vec<f64>> {
        let vals: Vec<(f64, f64)> = nodes.par_iter().map(|&(p, _)| (d.eval(p), p.t)).collect();
        for &(v, t) in &vals {
            if v <= 0.0 || v.is_nan() {
                return Err(Error::NotPositive { value: v, at: t });
            }
        }
        Ok(vals.into_iter().map(|(v, _)| v.ln()).collect())
    };
    let f_high = log_at(&grid.high)?;
    let f_low = log_at(&grid.low)?;

    // Running powers of the rotor e^{-2 pi i t} per node turn the k-th
    // coefficient into a plain weighted dot product.
    let mut acc_high: Vec<Complex64> = grid
        .high
        .iter()
        .zip(&f_high)
        .map(|(&(_, w), &f)| Complex64::new(w * f, 0.0))
        .collect();
    let rot_high: Vec<Complex64> = grid
        .high
        .iter()
        .map(|&(p, _)| quadrature::circle_exp(-1, p))
        .collect();
    let mut acc_low: Vec<Complex64> = grid
        .low
        .iter()
        .zip(&f_low)
        .map(|(&(_, w), &f)| Complex64::new(w * f, 0.0))
        .collect();
    let rot_low: Vec<Complex64> = grid
        .low
        .iter()
        .map(|&(p, _)| quadrature::circle_exp(-1, p))
        .collect();

    let mut u = Vec::with_capacity(n + 1);
    let mut worst = 0.0f64;
    for k in 0..=n {
        let hi: Complex64 = acc_high.iter().sum();
        let lo: Complex64 = acc_low.iter().sum();
        let scale = if k == 0 { 0.5 } else { 1.0 };
        let err = scale * (hi - lo).norm();
        worst = worst.max(err);
        u.push(-scale * hi);
        if k < n {
            for (a, r) in acc_high.iter_mut().zip(&rot_high) {
                *a *= r;
            }
            for (a, r) in acc_low.iter_mut().zip(&rot_low) {
                *a *= r;
            }
        }
    }
    if worst > tol {
        return Err(Error::QuadratureNonConvergence {
            requested: tol,
            achieved: worst,
        });
    }
    // u_0 = -(1/2) int log phi is real by construction (the k = 0 rotor power
    // is exactly 1), but normalize pedantically.
    u[0] = Complex64::new(u[0].re, 0.0);
    Ok(LogFourierCoeffs { u, quad_tol: tol })
}

// ---------------------------------------------------------------------------
// Coefficient series
// ---------------------------------------------------------------------------

/// Which function a coefficient vector expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesRole {
    /// psi = 1/S; these coefficients assemble the Toeplitz inverse.
    SzegoInverse,
    /// The Szego function S itself.
    Szego,
}

impl SeriesRole {
    pub fn flipped(self) -> SeriesRole {
        match self {
            SeriesRole::SzegoInverse => SeriesRole::Szego,
            SeriesRole::Szego => SeriesRole::SzegoInverse,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SeriesRole::SzegoInverse => "szego-inverse",
            SeriesRole::Szego => "szego",
        }
    }
}

/// Truncated power series of S or 1/S on the unit disk.
///
/// The constant term of either function is exp(-+ u_0) > 0, so `coeffs()[0]`
/// is always real and positive.
#[derive(Clone, Debug)]
pub struct CoefficientSeries {
    coeffs: Vec<Complex64>,
    role: SeriesRole,
    source_tol: f64,
}

impl CoefficientSeries {
    pub fn from_coeffs(coeffs: Vec<Complex64>, role: SeriesRole, source_tol: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty coefficient series".into()));
        }
        if coeffs
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput("non-finite series coefficient".into()));
        }
        if coeffs[0].re <= 0.0 || coeffs[0].re.is_nan() || coeffs[0].im != 0.0 {
            return Err(Error::InvalidInput(format!(
                "leading coefficient must be real and positive, got {}",
                coeffs[0]
            )));
        }
        Ok(CoefficientSeries {
            coeffs,
            role,
            source_tol,
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest retained power.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn role(&self) -> SeriesRole {
        self.role
    }

    /// Quadrature tolerance of the log-Fourier data this series came from
    /// (0 for exact closed forms).
    pub fn source_tol(&self) -> f64 {
        self.source_tol
    }

    /// Horner evaluation at a point of the open unit disk.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r >= 1.0 || r.is_nan() {
            return Err(Error::Domain(format!(
                "series evaluation needs |z| < 1, got |z| = {r}"
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc)
    }
}

/// exp of a power series with real constant term, by the usual recursion
/// b_0 = e^{v_0}, (n+1) b_{n+1} = sum_{k=0}^{n} (k+1) v_{k+1} b_{n-k}.
fn exp_series(v: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(Complex64::new(v[0].re.exp(), 0.0));
    for m in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=m {
            acc += (k as f64 + 1.0) * v[k + 1] * b[m - k];
        }
        b.push(acc / (m as f64 + 1.0));
    }
    b
}

/// Coefficients a_0, ..., a_n of psi = 1/S. Needs `n <= u.order()`.
pub fn psi_coefficients(u: &LogFourierCoeffs, n: usize) -> Result<CoefficientSeries> {
    if n > u.order() {
        return Err(Error::OutOfRange(format!(
            "series order {n} exceeds available log-Fourier order {}",
            u.order()
        )));
    }
    CoefficientSeries::from_coeffs(exp_series(&u.u, n), SeriesRole::SzegoInverse, u.quad_tol)
}

/// Coefficients c_0, ..., c_n of the Szego function S. Needs `n <= u.order()`.
pub fn szego_coefficients(u: &LogFourierCoeffs, n: usize) -> Result<CoefficientSeries> {
    if n > u.order() {
        return Err(Error::OutOfRange(format!(
            "series order {n} exceeds available log-Fourier order {}",
            u.order()
        )));
    }
    let neg: Vec<Complex64> = u.u.iter().map(|&z| -z).collect();
    CoefficientSeries::from_coeffs(exp_series(&neg, n), SeriesRole::Szego, u.quad_tol)
}

/// Series of 1/f to order n, given f with nonzero constant term:
/// r_0 = 1/f_0, r_n = -(1/f_0) sum_{k=1}^{n} f_k r_{n-k}.
///
/// `n` may exceed `f.order()`; missing coefficients of f are zero, which is
/// exact when f is a polynomial (the banded closed forms) and a truncation
/// otherwise. The role flips: the reciprocal of S expands psi and vice versa.
pub fn reciprocal_series(f: &CoefficientSeries, n: usize) -> Result<CoefficientSeries> {
    let f0 = f.coeffs[0];
    let mut r = Vec::with_capacity(n + 1);
    r.push(f0.inv());
    for m in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=m.min(f.order()) {
            acc += f.coeffs[k] * r[m - k];
        }
        r.push(-acc / f0);
    }
    CoefficientSeries::from_coeffs(r, f.role.flipped(), f.source_tol)
}

/// Worst absolute deviation of the Cauchy product a * c from the constant 1,
/// over all orders both series can resolve:
/// max_r | sum_{k=0}^{r} a_k c_{r-k} - [r = 0] |.
pub fn series_reciprocal_residual(a: &CoefficientSeries, c: &CoefficientSeries) -> Result<f64> {
    if a.role != SeriesRole::SzegoInverse || c.role != SeriesRole::Szego {
        return Err(Error::InvalidInput(
            "residual takes the 1/S series first and the S series second".into(),
        ));
    }
    let n = a.order().min(c.order());
    let mut worst = 0.0f64;
    for r in 0..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=r {
            acc += a.coeffs[k] * c.coeffs[r - k];
        }
        if r == 0 {
            acc -= 1.0;
        }
        worst = worst.max(acc.norm());
    }
    Ok(worst)
}

/// S(z) by direct quadrature of the Herglotz kernel:
/// S(z) = exp( (1/2) int (e^{2 pi i t} + z) / (e^{2 pi i t} - z) log phi(t) dt ).
///
/// Entirely independent of the series recursions; this is the cross-check
/// route. Cost grows as z approaches the unit circle (the kernel's effective
/// bandwidth is ~1/(1-|z|)).
pub fn szego_eval_integral(d: &dyn SpectralDensity, z: Complex64, tol: f64) -> Result<Complex64> {
    let r = z.norm();
    if r >= 1.0 || r.is_nan() {
        return Err(Error::Domain(format!(
            "Szego function evaluation needs |z| < 1, got |z| = {r}"
        )));
    }
    let osc = (1.0 / (1.0 - r)).ceil() as usize;
    let integral = quadrature::integrate(
        |p| {
            let e = quadrature::circle_exp(1, p);
            let v = d.eval(p);
            (e + z) / (e - z) * v.ln()
        },
        tol,
        osc.min(512),
    )?;
    Ok((0.5 * integral.value).exp())
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // constants frozen at oracle precision
mod tests {
    use super::*;
    use crate::density::{BandedDensity, FgnDensity};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tridiagonal() -> BandedDensity {
        BandedDensity::new(vec![c(-0.2, 0.0)]).unwrap()
    }

    // Reference values in this module were computed with 30-digit arithmetic
    // (tanh-sinh quadrature of the defining integrals plus exact rational
    // recursions), then rounded once.

    #[test]
    fn log_fourier_tridiagonal() {
        let u = log_fourier_coefficients(&tridiagonal(), 8, 1e-12).unwrap();
        assert_eq!(u.order(), 8);
        // u_0 = -(1/2) int log phi = -log c0.
        assert_abs_diff_eq!(u.coeffs()[0].re, 0.021319337730844648, epsilon = 1e-12);
        assert_abs_diff_eq!(u.coeffs()[1].re, 0.20871215252208, epsilon = 1e-12);
        // Real density, real coefficients.
        for uk in u.coeffs() {
            assert!(uk.im.abs() < 1e-13);
        }
    }

    #[test]
    fn log_fourier_white_noise_vanishes() {
        let d = FgnDensity::new(0.5).unwrap();
        let u = log_fourier_coefficients(&d, 6, 1e-10).unwrap();
        for uk in u.coeffs() {
            assert!(uk.norm() < 1e-11, "{uk}");
        }
    }

    #[test]
    fn log_fourier_long_memory_reference() {
        let d = FgnDensity::new(0.75).unwrap();
        let u = log_fourier_coefficients(&d, 7, 1e-10).unwrap();
        let expect = [
            0.11399401986720806527,
            -0.33350364611258084179,
            -0.12370071192387437865,
            -0.083855773549454496734,
            -0.062641130599385141964,
            -0.050069974303096647294,
            -0.041703829760400253377,
            -0.035736135692169763684,
        ];
        for (uk, e) in u.coeffs().iter().zip(expect) {
            assert_abs_diff_eq!(uk.re, e, epsilon = 1e-10);
            assert!(uk.im.abs() < 1e-11);
        }
    }

    #[test]
    fn log_fourier_antipersistent_sign_flip() {
        // H < 1/2 flips the sign of u_1: the density now vanishes at the
        // endpoints instead of blowing up.
        let d = FgnDensity::new(0.3).unwrap();
        let u = log_fourier_coefficients(&d, 1, 1e-10).unwrap();
        assert_abs_diff_eq!(u.coeffs()[0].re, 0.045529253073387057655, epsilon = 1e-10);
        assert_abs_diff_eq!(u.coeffs()[1].re, 0.29265084370280182757, epsilon = 1e-10);
    }

    #[test]
    fn log_fourier_grid_independence() {
        // Doubling the interior panel count must not move any coefficient by
        // more than the tolerance.
        let d = FgnDensity::new(0.75).unwrap();
        let coarse = log_fourier_on_grid(&d, 12, 1e-10, GRID_DEPTH, 1.0).unwrap();
        let fine = log_fourier_on_grid(&d, 12, 1e-10, GRID_DEPTH + 1, 0.5).unwrap();
        for (a, b) in coarse.coeffs().iter().zip(fine.coeffs()) {
            assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn psi_series_tridiagonal_closed_form() {
        // a_n = (1/c0) (-q/c0^2)^n for phi = 1 + 2 q cos(2 pi t).
        let u = log_fourier_coefficients(&tridiagonal(), 8, 1e-12).unwrap();
        let a = psi_coefficients(&u, 8).unwrap();
        assert_eq!(a.role(), SeriesRole::SzegoInverse);
        let expect = [
            1.0215482184460995787,
            0.2132095275769814296,
            0.04449941943880756929,
            0.0092875696170564168545,
        ];
        for (ak, e) in a.coeffs().iter().zip(expect) {
            assert_abs_diff_eq!(ak.re, e, epsilon = 1e-11);
            assert!(ak.im.abs() < 1e-13);
        }
    }

    #[test]
    fn szego_series_of_banded_density_is_polynomial() {
        // For a tridiagonal symbol S is an exact degree-1 polynomial: every
        // higher coefficient of the recursion must vanish.
        let u = log_fourier_coefficients(&tridiagonal(), 10, 1e-12).unwrap();
        let s = szego_coefficients(&u, 10).unwrap();
        assert_abs_diff_eq!(s.coeffs()[0].re, 0.97890631293070329277, epsilon = 1e-12);
        assert_abs_diff_eq!(
            s.coeffs()[1].re,
            -0.2 / 0.97890631293070329277,
            epsilon = 1e-11
        );
        for k in 2..=10 {
            assert!(s.coeffs()[k].norm() < 1e-11, "c_{k} = {}", s.coeffs()[k]);
        }
    }

    #[test]
    fn series_reference_values_long_memory() {
        let d = FgnDensity::new(0.75).unwrap();
        let u = log_fourier_coefficients(&d, 7, 1e-10).unwrap();
        let a = psi_coefficients(&u, 7).unwrap();
        let expect_a = [
            1.1207454226576595025,
            -0.37377268482031491703,
            -0.076309730065744209437,
            -0.054673818492056942109,
            -0.037419248754988352594,
            -0.028344285507582535048,
            -0.022546193194401996995,
            -0.018583242041152409883,
        ];
        for (ak, e) in a.coeffs().iter().zip(expect_a) {
            assert_abs_diff_eq!(ak.re, e, epsilon = 1e-9);
            assert!(ak.im.abs() < 1e-11);
        }
        let s = szego_coefficients(&u, 3).unwrap();
        let expect_c = [
            0.89226329171942365291,
            0.29757306108084114975,
            0.15999445483690343755,
            0.11714767288892656524,
        ];
        for (ck, e) in s.coeffs().iter().zip(expect_c) {
            assert_abs_diff_eq!(ck.re, e, epsilon = 1e-9);
        }
    }

    #[test]
    fn psi_and_szego_series_are_reciprocal() {
        let d = FgnDensity::new(0.75).unwrap();
        let u = log_fourier_coefficients(&d, 64, 1e-10).unwrap();
        let a = psi_coefficients(&u, 64).unwrap();
        let s = szego_coefficients(&u, 64).unwrap();
        // The two exponential recursions are algebraically exact mutual
        // inverses; only rounding separates their Cauchy product from 1.
        let res = series_reciprocal_residual(&a, &s).unwrap();
        assert!(res < 1e-13, "residual {res}");
        // And the generic reciprocal recursion reproduces a from s.
        let a2 = reciprocal_series(&s, 64).unwrap();
        assert_eq!(a2.role(), SeriesRole::SzegoInverse);
        for (x, y) in a.coeffs().iter().zip(a2.coeffs()) {
            assert!((x - y).norm() < 1e-12);
        }
        // Pointwise: psi(z) S(z) = 1 inside the disk.
        for z in [c(0.3, 0.0), c(-0.2, 0.4), c(0.0, -0.5)] {
            let prod = a.eval(z).unwrap() * s.eval(z).unwrap();
            assert!((prod - 1.0).norm() < 1e-10, "psi*S = {prod} at {z}");
        }
    }

    #[test]
    fn residual_checks_roles() {
        let d = FgnDensity::new(0.6).unwrap();
        let u = log_fourier_coefficients(&d, 4, 1e-9).unwrap();
        let a = psi_coefficients(&u, 4).unwrap();
        let s = szego_coefficients(&u, 4).unwrap();
        assert!(series_reciprocal_residual(&a, &s).is_ok());
        assert!(series_reciprocal_residual(&a, &a).is_err());
        assert!(series_reciprocal_residual(&s, &s).is_err());
    }

    #[test]
    fn direct_integral_matches_series_banded() {
        let d = tridiagonal();
        let u = log_fourier_coefficients(&d, 8, 1e-12).unwrap();
        let s = szego_coefficients(&u, 8).unwrap();
        for z in [c(0.3, 0.0), c(-0.55, 0.2), c(0.1, 0.6)] {
            let direct = szego_eval_integral(&d, z, 1e-11).unwrap();
            let series = s.eval(z).unwrap();
            assert!(
                (direct - series).norm() < 1e-10,
                "{direct} vs {series} at {z}"
            );
        }
    }

    #[test]
    fn direct_integral_matches_series_long_memory() {
        let d = FgnDensity::new(0.75).unwrap();
        let u = log_fourier_coefficients(&d, 48, 1e-10).unwrap();
        let s = szego_coefficients(&u, 48).unwrap();
        let direct = szego_eval_integral(&d, c(0.3, 0.0), 1e-10).unwrap();
        assert_abs_diff_eq!(direct.re, 1.000124333835549239, epsilon = 1e-9);
        assert!(direct.im.abs() < 1e-10);
        let series = s.eval(c(0.3, 0.0)).unwrap();
        assert!((direct - series).norm() < 1e-9);
    }

    #[test]
    fn szego_eval_at_origin_is_geometric_mean_root() {
        let d = FgnDensity::new(0.75).unwrap();
        let s0 = szego_eval_integral(&d, c(0.0, 0.0), 1e-10).unwrap();
        assert_abs_diff_eq!(s0.re, 0.89226329171942365291, epsilon = 1e-9);
    }

    #[test]
    fn argument_and_input_validation() {
        let d = tridiagonal();
        let u = log_fourier_coefficients(&d, 4, 1e-10).unwrap();
        assert!(matches!(psi_coefficients(&u, 5), Err(Error::OutOfRange(_))));
        assert!(matches!(
            szego_coefficients(&u, 9),
            Err(Error::OutOfRange(_))
        ));
        assert!(log_fourier_coefficients(&d, 4, 0.0).is_err());
        assert!(log_fourier_coefficients(&d, MAX_ORDER + 1, 1e-8).is_err());
        assert!(LogFourierCoeffs::from_values(vec![], 0.0).is_err());
        assert!(LogFourierCoeffs::from_values(vec![c(0.1, 0.5)], 0.0).is_err());
        assert!(CoefficientSeries::from_coeffs(vec![], SeriesRole::Szego, 0.0).is_err());
        assert!(
            CoefficientSeries::from_coeffs(vec![c(-1.0, 0.0)], SeriesRole::Szego, 0.0).is_err()
        );
        let a = psi_coefficients(&u, 4).unwrap();
        assert!(a.eval(c(1.0, 0.0)).is_err());
        assert!(a.eval(c(0.8, 0.8)).is_err());
        assert!(szego_eval_integral(&d, c(0.0, 1.0), 1e-8).is_err());
    }

    #[test]
    fn white_noise_series_is_trivial() {
        let d = FgnDensity::new(0.5).unwrap();
        let u = log_fourier_coefficients(&d, 6, 1e-10).unwrap();
        let a = psi_coefficients(&u, 6).unwrap();
        assert_abs_diff_eq!(a.coeffs()[0].re, 1.0, epsilon = 1e-11);
        for k in 1..=6 {
            assert!(a.coeffs()[k].norm() < 1e-10);
        }
    }
}
