//! Spectral densities on (0, 1) and their Fourier data.
//!
//! A density phi is the symbol of the infinite Toeplitz matrix under study:
//! G_{k,j} = gamma(j - k) with gamma(k) = int_0^1 e^{2 pi i k t} phi(t) dt.
//! Two families are built in: fractional Gaussian noise (parametrized by the
//! Hurst exponent) and banded densities (trigonometric polynomials, which
//! give banded G). Everything downstream only sees the [`SpectralDensity`]
//! trait.

use crate::error::{Error, Result};
use crate::quadrature::{self, EvalPoint};
use crate::special;
use num_complex::Complex64;

/// A strictly positive, integrable spectral density on (0, 1).
///
/// Implementations must be evaluatable at any interior point; the crate
/// always hands over abscissas carrying both `t` and `1 - t` at full
/// precision, so endpoint-singular behavior can be computed stably.
pub trait SpectralDensity: Sync {
    /// phi(t) at an interior point.
    fn eval(&self, p: EvalPoint) -> f64;

    /// Highest nonzero Fourier mode, when the density is a trigonometric
    /// polynomial; `None` for densities with full spectra.
    fn band_order(&self) -> Option<usize> {
        None
    }

    /// Closed-form autocovariance gamma(k), when one is known. Implementors
    /// must satisfy gamma(-k) = conj(gamma(k)).
    fn autocovariance(&self, _k: i64) -> Option<Complex64> {
        None
    }
}

// ---------------------------------------------------------------------------
// Fractional Gaussian noise
// ---------------------------------------------------------------------------

/// Normalizing constant C(H) = -zeta(-2H) / (2 zeta(1 + 2H)) that gives the
/// fractional Gaussian noise density unit variance.
pub fn fgn_normalizing_constant(h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::Domain(format!(
            "Hurst exponent must lie in (0, 1), got {h}"
        )));
    }
    let num = special::riemann_zeta(-2.0 * h)?;
    let den = special::riemann_zeta(1.0 + 2.0 * h)?;
    Ok(-num / (2.0 * den))
}

/// Autocovariance of fractional Gaussian noise with unit variance:
/// gamma(k) = (|k+1|^{2H} + |k-1|^{2H}) / 2 - |k|^{2H}.
pub fn fgn_autocovariance(h: f64, k: i64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::Domain(format!(
            "Hurst exponent must lie in (0, 1), got {h}"
        )));
    }
    let e = 2.0 * h;
    let k = k.unsigned_abs() as f64;
    Ok(0.5 * ((k + 1.0).powf(e) + (k - 1.0).abs().powf(e)) - k.powf(e))
}

/// The fractional Gaussian noise spectral density
/// phi_H(t) = 4 C(H) sin^2(pi t) * (zeta(2H+1, t) + zeta(2H+1, 1-t)).
///
/// For H > 1/2 the density blows up like |t|^{1-2H} at the endpoints (long
/// memory); for H < 1/2 it vanishes at the same rate; H = 1/2 is white noise,
/// phi identically 1.
#[derive(Clone, Debug)]
pub struct FgnDensity {
    h: f64,
    c: f64,
}

impl FgnDensity {
    pub fn new(h: f64) -> Result<Self> {
        let c = fgn_normalizing_constant(h)?;
        Ok(FgnDensity { h, c })
    }

    pub fn hurst(&self) -> f64 {
        self.h
    }

    pub fn normalizing_constant(&self) -> f64 {
        self.c
    }
}

impl SpectralDensity for FgnDensity {
    fn eval(&self, p: EvalPoint) -> f64 {
        assert!(
            p.t > 0.0 && p.omt > 0.0,
            "density evaluated outside (0,1): t = {}, 1-t = {}",
            p.t,
            p.omt
        );
        let s = 2.0 * self.h + 1.0;
        let sp = p.sin_pi();
        let lattice = special::hurwitz_zeta_raw(s, p.t) + special::hurwitz_zeta_raw(s, p.omt);
        4.0 * self.c * sp * sp * lattice
    }

    fn autocovariance(&self, k: i64) -> Option<Complex64> {
        Some(Complex64::new(
            fgn_autocovariance(self.h, k).expect("validated at construction"),
            0.0,
        ))
    }
}

// ---------------------------------------------------------------------------
// Banded densities
// ---------------------------------------------------------------------------

/// A trigonometric polynomial density
/// phi(t) = 1 + sum_{k=1}^{m} ( q_k e^{2 pi i k t} + conj(q_k) e^{-2 pi i k t} ),
/// validated to be strictly positive at construction. Its Toeplitz matrix is
/// banded with bandwidth m and autocovariance gamma(k) = conj(q_k) for
/// 1 <= k <= m, gamma(0) = 1.
#[derive(Clone, Debug)]
pub struct BandedDensity {
    q: Vec<Complex64>,
}

/// Sample points used for the positivity scan; local minima are then boxed
/// in by ternary search. Enough to isolate every basin of a trigonometric
/// polynomial with a few hundred modes.
const POSITIVITY_GRID: usize = 8192;

impl BandedDensity {
    /// Builds the density and verifies strict positivity on (0, 1).
    pub fn new(q: Vec<Complex64>) -> Result<Self> {
        if q.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(
                "banded density coefficients must be finite".into(),
            ));
        }
        if q.len() >= POSITIVITY_GRID / 8 {
            return Err(Error::InvalidInput(format!(
                "banded density supports at most {} modes, got {}",
                POSITIVITY_GRID / 8,
                q.len()
            )));
        }
        let d = BandedDensity { q };
        let (min, at) = d.minimum();
        if min <= 0.0 {
            return Err(Error::NotPositive { value: min, at });
        }
        Ok(d)
    }

    /// The identity density phi == 1 (m = 0).
    pub fn identity() -> Self {
        BandedDensity { q: Vec::new() }
    }

    /// Fourier coefficients q_1, ..., q_m of the positive-frequency side.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.q
    }

    pub fn order(&self) -> usize {
        self.q.len()
    }

    /// Global minimum of phi over the period, by grid scan plus ternary
    /// refinement of every sampled local minimum.
    fn minimum(&self) -> (f64, f64) {
        let n = POSITIVITY_GRID;
        let at = |i: usize| (i as f64 + 0.5) / n as f64;
        let vals: Vec<f64> = (0..n).map(|i| self.eval(EvalPoint::new(at(i)))).collect();
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..n {
            let prev = vals[(i + n - 1) % n];
            let next = vals[(i + 1) % n];
            if vals[i] <= prev && vals[i] <= next {
                // Ternary search on the bracketing interval (periodic).
                let mut lo = at(i) - 1.0 / n as f64;
                let mut hi = at(i) + 1.0 / n as f64;
                let f = |t: f64| self.eval(EvalPoint::new(t.rem_euclid(1.0).max(1e-300)));
                for _ in 0..80 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if f(m1) <= f(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                let t = 0.5 * (lo + hi);
                let v = f(t);
                if v < best.0 {
                    best = (v, t.rem_euclid(1.0));
                }
            }
        }
        best
    }
}

impl SpectralDensity for BandedDensity {
    fn eval(&self, p: EvalPoint) -> f64 {
        let mut v = 1.0;
        for (i, q) in self.q.iter().enumerate() {
            let e = quadrature::circle_exp((i + 1) as i64, p);
            v += 2.0 * (q.re * e.re - q.im * e.im); // 2 Re(q e^{2 pi i k t})
        }
        v
    }

    fn band_order(&self) -> Option<usize> {
        Some(self.q.len())
    }

    fn autocovariance(&self, k: i64) -> Option<Complex64> {
        let idx = k.unsigned_abs() as usize;
        let g = if idx == 0 {
            Complex64::new(1.0, 0.0)
        } else if idx <= self.q.len() {
            // gamma(k) = int e^{2 pi i k t} phi = conj(q_k) for k >= 1.
            let q = self.q[idx - 1];
            if k > 0 {
                q.conj()
            } else {
                q
            }
        } else {
            Complex64::new(0.0, 0.0)
        };
        Some(g)
    }
}

// ---------------------------------------------------------------------------
// Fourier data and the Szego condition
// ---------------------------------------------------------------------------

/// gamma(k) = int_0^1 e^{2 pi i k t} phi(t) dt by adaptive quadrature
/// (closed forms, when the density has them, are deliberately *not* used:
/// this is the reference route the closed forms get tested against).
pub fn density_fourier_coefficient(d: &dyn SpectralDensity, k: i64, tol: f64) -> Result<Complex64> {
    let r = quadrature::integrate(
        |p| quadrature::circle_exp(k, p) * d.eval(p),
        tol,
        k.unsigned_abs() as usize,
    )?;
    Ok(r.value)
}

/// Outcome of the Szego condition check: the sampled minimum of phi and the
/// value of int_0^1 log phi(t) dt.
#[derive(Clone, Copy, Debug)]
pub struct SzegoReport {
    pub min_sampled_density: f64,
    pub log_integral: f64,
}

/// Verifies that phi is strictly positive on a sample grid and that its log
/// is integrable, returning int log phi. Densities touching zero (or worse)
/// produce [`Error::SzegoViolation`] / [`Error::NotPositive`]; a divergent
/// log integral surfaces as quadrature non-convergence.
pub fn szego_condition_report(d: &dyn SpectralDensity, tol: f64) -> Result<SzegoReport> {
    let n = 4096;
    let mut min = f64::INFINITY;
    let mut at = 0.0;
    for i in 0..n {
        let t = (i as f64 + 0.5) / n as f64;
        let v = d.eval(EvalPoint::new(t));
        if !v.is_finite() && v < 0.0 {
            return Err(Error::NotPositive { value: v, at: t });
        }
        if v < min {
            min = v;
            at = t;
        }
    }
    if min <= 0.0 {
        return Err(Error::SzegoViolation(format!(
            "density reaches {min:e} at t = {at}; log phi is not integrable"
        )));
    }
    let r = quadrature::integrate_real(|p| d.eval(p).ln(), tol, 0)?;
    Ok(SzegoReport {
        min_sampled_density: min,
        log_integral: r.value.re,
    })
}
