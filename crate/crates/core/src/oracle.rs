//! Finite-section validation oracle.
//!
//! Everything else in this crate reaches the inverse through the Szego
//! machinery. This module deliberately does not: it builds the m x m
//! autocovariance section as a dense Hermitian matrix, factors it by
//! Cholesky, and extracts the leading corner of its inverse with triangular
//! solves. The two routes share no code past the autocovariance values, so
//! agreement between them is evidence, not tautology.
//!
//! Sections are capped at m = 2000; storage is dense (a 2000 x 2000 complex
//! matrix plus its factor is about 128 MB) and the factorization is the
//! classical O(m^3) algorithm, which is the point: slow, dumb, and easy to
//! audit.

use crate::density::{self, SpectralDensity};
use crate::error::{Error, Result};
use crate::inverse::{BlockSource, InverseBlock};
use num_complex::Complex64;
use rayon::prelude::*;

/// Largest permitted finite-section order.
pub const MAX_SECTION: usize = 2000;

/// Dense Hermitian matrix, 1-based accessors, row-major storage.
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    m: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds the Toeplitz section g_{k,j} = gamma(j - k) from the
    /// autocovariances gamma(0), ..., gamma(m - 1); negative lags fill in by
    /// conjugate symmetry.
    pub fn from_autocovariance(gamma: &[Complex64]) -> Result<Self> {
        let m = gamma.len();
        if m == 0 {
            return Err(Error::InvalidInput(
                "need at least one autocovariance value".into(),
            ));
        }
        if m > MAX_SECTION {
            return Err(Error::OutOfRange(format!(
                "section order {m} exceeds the cap {MAX_SECTION}"
            )));
        }
        if gamma.iter().any(|g| !g.re.is_finite() || !g.im.is_finite()) {
            return Err(Error::InvalidInput("autocovariances must be finite".into()));
        }
        if gamma[0].im.abs() > 1e-12 * gamma[0].re.abs().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "variance must be real, got imaginary part {:e}",
                gamma[0].im
            )));
        }
        if gamma[0].re <= 0.0 {
            return Err(Error::NotPositive {
                value: gamma[0].re,
                at: 0.0,
            });
        }
        let mut data = vec![Complex64::default(); m * m];
        for k in 0..m {
            for j in 0..m {
                data[k * m + j] = if j >= k {
                    gamma[j - k]
                } else {
                    gamma[k - j].conj()
                };
            }
        }
        Ok(HermitianMatrix { m, data })
    }

    /// Wraps a dense row-major m x m array, verifying conjugate symmetry
    /// (within 1e-12) and real diagonal. Used to subject non-Toeplitz
    /// matrices, such as inverse blocks, to the same Cholesky machinery.
    pub fn from_dense(m: usize, data: Vec<Complex64>) -> Result<Self> {
        if m == 0 || m > MAX_SECTION {
            return Err(Error::OutOfRange(format!(
                "matrix order must lie in 1..={MAX_SECTION}, got {m}"
            )));
        }
        if data.len() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for order {m}, got {}",
                m * m,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        let scale = data.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for k in 0..m {
            for j in 0..=k {
                let defect = (data[k * m + j] - data[j * m + k].conj()).norm();
                if defect > 1e-12 * scale {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not Hermitian: defect {defect:e} at ({}, {})",
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(HermitianMatrix { m, data })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Entry (k, j), both indices 1-based.
    pub fn get(&self, k: usize, j: usize) -> Complex64 {
        assert!(
            (1..=self.m).contains(&k) && (1..=self.m).contains(&j),
            "index ({k},{j}) outside 1..={}",
            self.m
        );
        self.data[(k - 1) * self.m + (j - 1)]
    }

    /// Cholesky factorization G = L L^H. Fails with the offending pivot if
    /// the matrix is not positive definite. Matrices with no imaginary part
    /// anywhere are factored in real arithmetic.
    pub fn cholesky(&self) -> Result<CholeskyFactor> {
        if self.data.iter().all(|z| z.im == 0.0) {
            self.cholesky_real()
        } else {
            self.cholesky_complex()
        }
    }

    fn cholesky_real(&self) -> Result<CholeskyFactor> {
        let m = self.m;
        let mut l = vec![0.0f64; m * m];
        let mut min_pivot = f64::INFINITY;
        for i in 0..m {
            for j in 0..=i {
                let dot: f64 = l[i * m..i * m + j]
                    .iter()
                    .zip(&l[j * m..j * m + j])
                    .map(|(a, b)| a * b)
                    .sum();
                let s = self.data[i * m + j].re - dot;
                if i == j {
                    if s <= 0.0 {
                        return Err(Error::NotPositiveDefinite {
                            pivot: s,
                            index: i + 1,
                        });
                    }
                    min_pivot = min_pivot.min(s);
                    l[i * m + i] = s.sqrt();
                } else {
                    l[i * m + j] = s / l[j * m + j];
                }
            }
        }
        Ok(CholeskyFactor {
            m,
            factor: Factor::Real(l),
            min_pivot,
        })
    }

    fn cholesky_complex(&self) -> Result<CholeskyFactor> {
        let m = self.m;
        let mut l = vec![Complex64::default(); m * m];
        let mut min_pivot = f64::INFINITY;
        for i in 0..m {
            for j in 0..i {
                let dot: Complex64 = l[i * m..i * m + j]
                    .iter()
                    .zip(&l[j * m..j * m + j])
                    .map(|(a, b)| a * b.conj())
                    .sum();
                l[i * m + j] = (self.data[i * m + j] - dot) / l[j * m + j];
            }
            let dot: f64 = l[i * m..i * m + i].iter().map(|z| z.norm_sqr()).sum();
            let s = self.data[i * m + i].re - dot;
            if s <= 0.0 {
                return Err(Error::NotPositiveDefinite {
                    pivot: s,
                    index: i + 1,
                });
            }
            min_pivot = min_pivot.min(s);
            l[i * m + i] = Complex64::new(s.sqrt(), 0.0);
        }
        Ok(CholeskyFactor {
            m,
            factor: Factor::Complex(l),
            min_pivot,
        })
    }
}

#[derive(Debug)]
enum Factor {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Lower-triangular Cholesky factor of a Hermitian positive definite matrix.
#[derive(Debug)]
pub struct CholeskyFactor {
    m: usize,
    factor: Factor,
    min_pivot: f64,
}

impl CholeskyFactor {
    /// Smallest Schur-complement pivot seen during factorization; a direct
    /// conditioning witness.
    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    /// Solves L L^H x = b.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let m = self.m;
        if b.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix order is {m}",
                b.len()
            )));
        }
        let mut x = b.to_vec();
        match &self.factor {
            Factor::Real(l) => {
                for i in 0..m {
                    let mut s = x[i];
                    for k in 0..i {
                        s -= l[i * m + k] * x[k];
                    }
                    x[i] = s / l[i * m + i];
                }
                for i in (0..m).rev() {
                    let mut s = x[i];
                    for k in i + 1..m {
                        s -= l[k * m + i] * x[k];
                    }
                    x[i] = s / l[i * m + i];
                }
            }
            Factor::Complex(l) => {
                for i in 0..m {
                    let mut s = x[i];
                    for k in 0..i {
                        s -= l[i * m + k] * x[k];
                    }
                    x[i] = s / l[i * m + i];
                }
                for i in (0..m).rev() {
                    let mut s = x[i];
                    for k in i + 1..m {
                        s -= l[k * m + i].conj() * x[k];
                    }
                    x[i] = s / l[i * m + i];
                }
            }
        }
        Ok(x)
    }
}

/// Builds the m x m autocovariance section of a density, using its closed
/// form where it has one and quadrature (to `tol`) where it does not.
pub fn finite_section_matrix(
    d: &dyn SpectralDensity,
    m: usize,
    tol: f64,
) -> Result<HermitianMatrix> {
    if m == 0 || m > MAX_SECTION {
        return Err(Error::OutOfRange(format!(
            "section order must lie in 1..={MAX_SECTION}, got {m}"
        )));
    }
    let gamma = if (0..m).all(|l| d.autocovariance(l as i64).is_some()) {
        (0..m)
            .map(|l| d.autocovariance(l as i64).expect("checked above"))
            .collect::<Vec<_>>()
    } else {
        (0..m as i64)
            .into_par_iter()
            .map(|l| density::density_fourier_coefficient(d, l, tol))
            .collect::<Result<Vec<_>>>()?
    };
    HermitianMatrix::from_autocovariance(&gamma)
}

/// Leading n x n corner of the section's inverse, extracted column by column
/// with triangular solves. This is the oracle against which the series
/// assembly is judged.
pub fn finite_section_inverse_block(g: &HermitianMatrix, n: usize) -> Result<InverseBlock> {
    let m = g.m();
    if n == 0 || n > m {
        return Err(Error::OutOfRange(format!(
            "corner size {n} must lie in 1..={m}"
        )));
    }
    let factor = g.cholesky()?;
    let mut raw = vec![Complex64::default(); n * n];
    let mut e = vec![Complex64::default(); m];
    for j in 0..n {
        e[j] = Complex64::new(1.0, 0.0);
        let x = factor.solve(&e)?;
        e[j] = Complex64::default();
        for k in 0..n {
            raw[k * n + j] = x[k];
        }
    }
    InverseBlock::from_raw(
        n,
        raw,
        BlockSource::FiniteSection {
            m,
            min_pivot: factor.min_pivot(),
        },
    )
}

/// Entrywise comparison of two same-size inverse blocks.
#[derive(Clone, Copy, Debug)]
pub struct OracleReport {
    /// Section order behind the finite-section side (0 if neither block came
    /// from a finite section).
    pub m: usize,
    /// Block size compared.
    pub n: usize,
    /// max |a_{k,j} - b_{k,j}|.
    pub max_abs_diff: f64,
    /// Frobenius norm of the difference.
    pub frobenius_diff: f64,
    /// Smallest Cholesky pivot of the finite-section side, if there was one.
    pub cholesky_min_pivot: Option<f64>,
}

pub fn compare_blocks(a: &InverseBlock, b: &InverseBlock) -> Result<OracleReport> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare a {} x {} block with a {} x {} block",
            a.n(),
            a.n(),
            b.n(),
            b.n()
        )));
    }
    let n = a.n();
    let mut max_abs = 0.0f64;
    let mut frob = 0.0f64;
    for k in 1..=n {
        for j in 1..=n {
            let d = (a.get(k, j) - b.get(k, j)).norm();
            max_abs = max_abs.max(d);
            frob += d * d;
        }
    }
    let section = [b.source(), a.source()].into_iter().find_map(|s| match *s {
        BlockSource::FiniteSection { m, min_pivot } => Some((m, min_pivot)),
        _ => None,
    });
    Ok(OracleReport {
        m: section.map_or(0, |(m, _)| m),
        n,
        max_abs_diff: max_abs,
        frobenius_diff: frob.sqrt(),
        cholesky_min_pivot: section.map(|(_, p)| p),
    })
}
