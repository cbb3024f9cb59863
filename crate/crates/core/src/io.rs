//! File formats: density specifications in, matrices and reports out.
//!
//! All numeric output uses 17 significant digits so files round-trip through
//! f64 exactly, and every writer is a pure function of its input values, so
//! identical runs produce byte-identical files. Golden tests pin the exact
//! bytes.

use crate::density::{BandedDensity, FgnDensity, SpectralDensity};
use crate::error::{Error, Result};
use crate::inverse::{BlockSource, InverseBlock};
use crate::oracle::OracleReport;
use crate::quadrature::EvalPoint;
use crate::transform::{CoefficientSeries, LogFourierCoeffs, SeriesRole};
use num_complex::Complex64;
use serde::Deserialize;
use std::fmt::Write as _;

// ---------------------------------------------------------------------------
// Numeric formatting
// ---------------------------------------------------------------------------

/// Full-fidelity decimal form (17 significant digits); negative zero is
/// normalized to keep reruns byte-identical no matter which signed zero a
/// computation lands on.
pub fn fmt_full(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Short human-readable form (6 significant digits) for table mode.
fn fmt_short(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.5e}")
}

fn fmt_complex_json(z: Complex64) -> String {
    format!("{{\"re\":{},\"im\":{}}}", fmt_full(z.re), fmt_full(z.im))
}

/// Complex number in "re+imj" text form, e.g. `1.25e0-4.189e-1j`.
pub fn fmt_complex_csv(z: Complex64) -> String {
    let re = fmt_full(z.re);
    let im = fmt_full(z.im);
    if im.starts_with('-') {
        format!("{re}{im}j")
    } else {
        format!("{re}+{im}j")
    }
}

fn fmt_complex_short(z: Complex64) -> String {
    let re = fmt_short(z.re);
    let im = fmt_short(z.im);
    if im.starts_with('-') {
        format!("{re}{im}j")
    } else {
        format!("{re}+{im}j")
    }
}

// ---------------------------------------------------------------------------
// Matrix output
// ---------------------------------------------------------------------------

fn source_fields_json(source: &BlockSource) -> String {
    match *source {
        BlockSource::SzegoSeries { order, tol } => format!(
            "{{\"source\":\"szego-series\",\"order\":{order},\"tol\":{}}}",
            fmt_full(tol)
        ),
        BlockSource::FiniteSection { m, min_pivot } => format!(
            "{{\"source\":\"finite-section\",\"m\":{m},\"min_pivot\":{}}}",
            fmt_full(min_pivot)
        ),
        BlockSource::ClosedForm => "{\"source\":\"closed-form\"}".to_string(),
        BlockSource::Whittle { tol } => {
            format!("{{\"source\":\"whittle\",\"tol\":{}}}", fmt_full(tol))
        }
    }
}

fn source_fields_text(source: &BlockSource) -> String {
    match *source {
        BlockSource::SzegoSeries { order, tol } => {
            format!("source=szego-series order={order} tol={}", fmt_full(tol))
        }
        BlockSource::FiniteSection { m, min_pivot } => format!(
            "source=finite-section m={m} min_pivot={}",
            fmt_full(min_pivot)
        ),
        BlockSource::ClosedForm => "source=closed-form".to_string(),
        BlockSource::Whittle { tol } => format!("source=whittle tol={}", fmt_full(tol)),
    }
}

/// JSON matrix file: `{"n":…, "meta":{…}, "entries":[[{"re","im"},…],…]}`,
/// one row per line.
pub fn matrix_json(block: &InverseBlock) -> String {
    let n = block.n();
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"n\": {n},");
    let _ = writeln!(s, "  \"meta\": {},", source_fields_json(block.source()));
    s.push_str("  \"entries\": [\n");
    for (i, row) in block.rows().enumerate() {
        let cells: Vec<String> = row.iter().map(|&z| fmt_complex_json(z)).collect();
        let comma = if i + 1 < n { "," } else { "" };
        let _ = writeln!(s, "    [{}]{comma}", cells.join(","));
    }
    s.push_str("  ]\n}\n");
    s
}

/// CSV matrix file: a `#` metadata header line, then one row per line with
/// entries in "re+imj" form.
pub fn matrix_csv(block: &InverseBlock) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# n={} {}",
        block.n(),
        source_fields_text(block.source())
    );
    for row in block.rows() {
        let cells: Vec<String> = row.iter().map(|&z| fmt_complex_csv(z)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Aligned human-readable table at 6 significant digits. Matrices with no
/// imaginary part anywhere print as plain reals.
pub fn matrix_table(block: &InverseBlock) -> String {
    let real = block.rows().all(|row| row.iter().all(|z| z.im == 0.0));
    let cells: Vec<Vec<String>> = block
        .rows()
        .map(|row| {
            row.iter()
                .map(|&z| {
                    if real {
                        fmt_short(z.re)
                    } else {
                        fmt_complex_short(z)
                    }
                })
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# n={} {}",
        block.n(),
        source_fields_text(block.source())
    );
    for row in &cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        s.push_str(padded.join("  ").trim_end());
        s.push('\n');
    }
    s
}

/// The matrix output formats the command line exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
    Table,
}

pub fn render_matrix(block: &InverseBlock, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Json => matrix_json(block),
        MatrixFormat::Csv => matrix_csv(block),
        MatrixFormat::Table => matrix_table(block),
    }
}

// ---------------------------------------------------------------------------
// Coefficient dump
// ---------------------------------------------------------------------------

/// Coefficient dump: `{"u":[…], "a":[…], "c":[…], "N":…, "tol":…}` with
/// complex entries as `{"re","im"}`.
pub fn coefficients_json(
    u: &LogFourierCoeffs,
    a: &CoefficientSeries,
    c: &CoefficientSeries,
) -> Result<String> {
    if a.role() != SeriesRole::SzegoInverse {
        return Err(Error::InvalidInput(
            "the a array must be a szego-inverse series".into(),
        ));
    }
    if c.role() != SeriesRole::Szego {
        return Err(Error::InvalidInput(
            "the c array must be a szego series".into(),
        ));
    }
    let arr = |zs: &[Complex64]| {
        let cells: Vec<String> = zs.iter().map(|&z| fmt_complex_json(z)).collect();
        format!("[{}]", cells.join(","))
    };
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"u\": {},", arr(u.coeffs()));
    let _ = writeln!(s, "  \"a\": {},", arr(a.coeffs()));
    let _ = writeln!(s, "  \"c\": {},", arr(c.coeffs()));
    let _ = writeln!(s, "  \"N\": {},", u.order());
    let _ = writeln!(s, "  \"tol\": {}", fmt_full(u.quad_tol()));
    s.push_str("}\n");
    Ok(s)
}

// ---------------------------------------------------------------------------
// Oracle report
// ---------------------------------------------------------------------------

/// Report JSON: `{"m":…, "n":…, "max_abs_diff":…, "frobenius_diff":…}`.
pub fn oracle_report_json(r: &OracleReport) -> String {
    format!(
        "{{\"m\":{},\"n\":{},\"max_abs_diff\":{},\"frobenius_diff\":{}}}\n",
        r.m,
        r.n,
        fmt_full(r.max_abs_diff),
        fmt_full(r.frobenius_diff)
    )
}

// ---------------------------------------------------------------------------
// Density specification files
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexSpec {
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields, rename_all = "lowercase")]
enum DensitySpec {
    Fgn {
        #[serde(rename = "H")]
        h: f64,
    },
    Banded {
        q: Vec<ComplexSpec>,
    },
}

/// A density parsed from a specification file; implements the density trait
/// by delegation so it can drive the whole pipeline directly.
#[derive(Clone, Debug)]
pub enum Density {
    Fgn(FgnDensity),
    Banded(BandedDensity),
}

impl SpectralDensity for Density {
    fn eval(&self, p: EvalPoint) -> f64 {
        match self {
            Density::Fgn(d) => d.eval(p),
            Density::Banded(d) => d.eval(p),
        }
    }

    fn band_order(&self) -> Option<usize> {
        match self {
            Density::Fgn(d) => d.band_order(),
            Density::Banded(d) => d.band_order(),
        }
    }

    fn autocovariance(&self, k: i64) -> Option<Complex64> {
        match self {
            Density::Fgn(d) => d.autocovariance(k),
            Density::Banded(d) => d.autocovariance(k),
        }
    }
}

/// Parses `{"kind":"fgn","H":0.75}` or
/// `{"kind":"banded","q":[{"re":-0.25,"im":0},…]}` (the `im` field may be
/// omitted for real coefficients). Construction-time validation (Hurst range,
/// positivity) runs here too, so a parsed density is always usable.
pub fn parse_density_spec(text: &str) -> Result<Density> {
    let spec: DensitySpec = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("density spec: {e}")))?;
    match spec {
        DensitySpec::Fgn { h } => Ok(Density::Fgn(FgnDensity::new(h)?)),
        DensitySpec::Banded { q } => {
            let q: Vec<Complex64> = q.iter().map(|z| Complex64::new(z.re, z.im)).collect();
            Ok(Density::Banded(BandedDensity::new(q)?))
        }
    }
}
