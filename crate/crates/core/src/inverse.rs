//! Entries and blocks of the infinite Toeplitz inverse.
//!
//! With psi = 1/S = sum a_n z^n in hand, the inverse of the infinite matrix
//! is explicit:
//!
//! ```text
//! (G^-1)_{k,j} = sum_{s=0}^{j-1} conj(a_s) a_{s+k-j}        (1 <= j <= k)
//! (G^-1)_{k,j} = conj( (G^-1)_{j,k} )                        (j > k)
//! ```
//!
//! equivalently: the leading n x n block is L L^H where L is lower
//! triangular Toeplitz with first column a_0, ..., a_{n-1}. Both routes are
//! implemented (they check each other), along with the reproducing kernel,
//! the polynomials the kernel partial-sums factor through, and the
//! Whittle-style limits that the entries approach deep in the matrix.

use crate::density::SpectralDensity;
use crate::error::{Error, Result};
use crate::quadrature;
use crate::transform::{CoefficientSeries, SeriesRole};
use num_complex::Complex64;

/// How an [`InverseBlock`] was produced.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockSource {
    /// Assembled from a 1/S series of the given truncation order, whose
    /// log-Fourier data was computed to `tol`.
    SzegoSeries { order: usize, tol: f64 },
    /// Corner of a numerically inverted m x m finite section; `min_pivot` is
    /// the smallest Cholesky pivot encountered.
    FiniteSection { m: usize, min_pivot: f64 },
    /// Banded-density closed form.
    ClosedForm,
    /// Fourier coefficients of 1/phi (the Whittle matrix), quadrature
    /// tolerance attached.
    Whittle { tol: f64 },
}

impl BlockSource {
    pub fn label(&self) -> &'static str {
        match self {
            BlockSource::SzegoSeries { .. } => "szego-series",
            BlockSource::FiniteSection { .. } => "finite-section",
            BlockSource::ClosedForm => "closed-form",
            BlockSource::Whittle { .. } => "whittle",
        }
    }
}

/// A dense Hermitian n x n matrix block with 1-based indexing, tagged with
/// its provenance and with the Hermitian defect of the raw data it was built
/// from (exactly 0 when the builder only produced a lower triangle).
#[derive(Clone, Debug)]
pub struct InverseBlock {
    n: usize,
    entries: Vec<Complex64>, // row-major, exactly Hermitian after construction
    hermitian_defect: f64,
    source: BlockSource,
}

impl InverseBlock {
    /// Builds from a generator of the lower triangle; `f(k, j)` is called
    /// once per pair with `1 <= j <= k <= n`, the upper triangle is the
    /// conjugate mirror, and diagonal imaginary parts (which must vanish for
    /// a Hermitian matrix) are measured into the defect and dropped.
    pub fn from_lower_fn(
        n: usize,
        source: BlockSource,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("block size must be at least 1".into()));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        let mut defect = 0.0f64;
        for k in 1..=n {
            for j in 1..=k {
                let v = f(k, j);
                if k == j {
                    defect = defect.max(v.im.abs());
                    entries[(k - 1) * n + (j - 1)] = Complex64::new(v.re, 0.0);
                } else {
                    entries[(k - 1) * n + (j - 1)] = v;
                    entries[(j - 1) * n + (k - 1)] = v.conj();
                }
            }
        }
        Ok(InverseBlock {
            n,
            entries,
            hermitian_defect: defect,
            source,
        })
    }

    /// Builds from a full row-major matrix, measuring how far it is from
    /// Hermitian and then symmetrizing (averaging mirrored pairs).
    pub fn from_raw(n: usize, raw: Vec<Complex64>, source: BlockSource) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("block size must be at least 1".into()));
        }
        if raw.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for an {n} x {n} block, got {}",
                n * n,
                raw.len()
            )));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        let mut defect = 0.0f64;
        for k in 0..n {
            for j in 0..=k {
                let lo = raw[k * n + j];
                let hi = raw[j * n + k];
                defect = defect.max((lo - hi.conj()).norm());
                let avg = 0.5 * (lo + hi.conj());
                if k == j {
                    entries[k * n + j] = Complex64::new(avg.re, 0.0);
                } else {
                    entries[k * n + j] = avg;
                    entries[j * n + k] = avg.conj();
                }
            }
        }
        Ok(InverseBlock {
            n,
            entries,
            hermitian_defect: defect,
            source,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at row k, column j, both 1-based (matching the mathematical
    /// indexing used throughout). Panics on out-of-range indices, like `Vec`.
    pub fn get(&self, k: usize, j: usize) -> Complex64 {
        assert!(
            (1..=self.n).contains(&k) && (1..=self.n).contains(&j),
            "block index ({k},{j}) outside 1..={}",
            self.n
        );
        self.entries[(k - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.n)
    }

    pub fn source(&self) -> &BlockSource {
        &self.source
    }

    /// Worst |raw_{k,j} - conj(raw_{j,k})| seen while building.
    pub fn hermitian_defect(&self) -> f64 {
        self.hermitian_defect
    }
}

fn require_inverse_role(a: &CoefficientSeries) -> Result<()> {
    if a.role() != SeriesRole::SzegoInverse {
        return Err(Error::InvalidInput(
            "inverse assembly needs the 1/S coefficient series, not the S series".into(),
        ));
    }
    Ok(())
}

/// Single entry (G^-1)_{k,j}, indices 1-based. Truncation requires
/// max(k, j) <= a.order() + 1.
pub fn inverse_entry(a: &CoefficientSeries, k: usize, j: usize) -> Result<Complex64> {
    require_inverse_role(a)?;
    if k == 0 || j == 0 {
        return Err(Error::OutOfRange("matrix indices are 1-based".into()));
    }
    if k.max(j) > a.order() + 1 {
        return Err(Error::OutOfRange(format!(
            "entry ({k},{j}) needs series coefficients up to a_{}, have order {}",
            k.max(j) - 1,
            a.order()
        )));
    }
    if j > k {
        return Ok(inverse_entry(a, j, k)?.conj());
    }
    let c = a.coeffs();
    let ell = k - j;
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..j {
        acc += c[s].conj() * c[s + ell];
    }
    Ok(acc)
}

/// The leading n x n inverse block via the triangular-Toeplitz product
/// L L^H, L lower triangular with first column a_0, ..., a_{n-1}.
///
/// Same numbers as [`inverse_entry`] up to summation order; the library's
/// tests hold the two routes against each other.
pub fn inverse_block(a: &CoefficientSeries, n: usize) -> Result<InverseBlock> {
    require_inverse_role(a)?;
    if n == 0 {
        return Err(Error::InvalidInput("block size must be at least 1".into()));
    }
    if n > a.order() + 1 {
        return Err(Error::OutOfRange(format!(
            "{n} x {n} block needs series coefficients up to a_{}, have order {}",
            n - 1,
            a.order()
        )));
    }
    let c = a.coeffs();
    let source = BlockSource::SzegoSeries {
        order: a.order(),
        tol: a.source_tol(),
    };
    InverseBlock::from_lower_fn(n, source, |k, j| {
        // (L L^H)_{k,j} = sum_i L_{k,i} conj(L_{j,i}), L_{k,i} = a_{k-i}.
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=j {
            acc += c[k - i] * c[j - i].conj();
        }
        acc
    })
}

/// The reproducing kernel of the weighted Hardy space the inverse lives in:
/// K(z, w) = psi(z) conj(psi(w)) / (1 - z conj(w)), both arguments in the
/// open unit disk.
pub fn reproducing_kernel(a: &CoefficientSeries, z: Complex64, w: Complex64) -> Result<Complex64> {
    require_inverse_role(a)?;
    let pz = a.eval(z)?;
    let pw = a.eval(w)?;
    Ok(pz * pw.conj() / (1.0 - z * w.conj()))
}

/// The polynomials Q_k(z) = a_k + a_{k-1} z + ... + a_0 z^k, k = 0..=n,
/// returned as ascending coefficient vectors.
///
/// Their partial sums reproduce the inverse blocks read corner-to-corner:
/// sum_{k=0}^{n} Q_k(z) conj(Q_k(w)) equals the flipped generating function
/// sum_{k,j=1}^{n+1} (G^-1)_{k,j} z^{n+1-k} conj(w)^{n+1-j}
/// (the powers decrease with the indices because a_s enters Q_k with its
/// order reversed).
pub fn q_polynomials(a: &CoefficientSeries, n: usize) -> Result<Vec<Vec<Complex64>>> {
    require_inverse_role(a)?;
    if n > a.order() {
        return Err(Error::OutOfRange(format!(
            "Q_{n} needs series order {n}, have {}",
            a.order()
        )));
    }
    let c = a.coeffs();
    Ok((0..=n)
        .map(|k| (0..=k).map(|i| c[k - i]).collect())
        .collect())
}

/// The limit of the diagonal entries of G^-1 deep in the matrix:
/// int_0^1 dt / phi(t).
pub fn diagonal_limit(d: &dyn SpectralDensity, tol: f64) -> Result<f64> {
    let r = quadrature::integrate_real(|p| 1.0 / d.eval(p), tol, 0)?;
    Ok(r.value.re)
}

/// Entry of the Whittle matrix, the inverse's deep-matrix limit:
/// W_{k,j} = int_0^1 e^{-2 pi i (k-j) t} / phi(t) dt, indices 1-based.
pub fn whittle_entry(d: &dyn SpectralDensity, k: usize, j: usize, tol: f64) -> Result<Complex64> {
    if k == 0 || j == 0 {
        return Err(Error::OutOfRange("matrix indices are 1-based".into()));
    }
    let ell = k as i64 - j as i64;
    let r = quadrature::integrate(
        |p| quadrature::circle_exp(-ell, p) / d.eval(p),
        tol,
        ell.unsigned_abs() as usize,
    )?;
    Ok(r.value)
}

/// Leading n x n block of the Whittle matrix. Toeplitz and Hermitian, so only
/// n quadratures are needed.
pub fn whittle_block(d: &dyn SpectralDensity, n: usize, tol: f64) -> Result<InverseBlock> {
    if n == 0 {
        return Err(Error::InvalidInput("block size must be at least 1".into()));
    }
    let mut w = Vec::with_capacity(n);
    for ell in 0..n {
        w.push(whittle_entry(d, ell + 1, 1, tol)?);
    }
    InverseBlock::from_lower_fn(n, BlockSource::Whittle { tol }, |k, j| w[k - j])
}
