//! Command-line front end for the inverse-block pipeline: compute coefficient
//! series, assemble inverse blocks, validate against the finite-section
//! oracle, and emit Whittle matrices, as JSON/CSV/table files.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric failure,
//! 4 validation bound breached.

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;
use szego::{
    inverse, oracle, transform, BandedDensity, Density, Error, MatrixFormat, SpectralDensity,
    TridiagonalSpec,
};

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_BOUND: u8 = 4;

#[derive(Parser)]
#[command(
    name = "szego",
    version,
    about = "Exact inverses of infinite Toeplitz covariance matrices",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the log-Fourier (u), inverse-Szego (a) and Szego (c) series
    Coeffs(RunArgs),
    /// Assemble the leading block of the inverse matrix
    Invert(RunArgs),
    /// Compare the pipeline block against the finite-section oracle
    Validate(RunArgs),
    /// Emit the leading block of the Whittle matrix (Fourier coefficients of 1/phi)
    Whittle(RunArgs),
}

impl Command {
    fn args(&self) -> &RunArgs {
        match self {
            Command::Coeffs(a)
            | Command::Invert(a)
            | Command::Validate(a)
            | Command::Whittle(a) => a,
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("density").required(true).args(["fgn", "banded", "tridiagonal"])))]
struct RunArgs {
    /// Fractional Gaussian noise with Hurst index H in (0, 1)
    #[arg(long, value_name = "H")]
    fgn: Option<f64>,

    /// Banded density: `identity`, inline spec JSON, or a spec file path
    /// (e.g. '{"kind":"banded","q":[{"re":-0.2}]}')
    #[arg(long, value_name = "FILE|JSON|identity")]
    banded: Option<String>,

    /// Tridiagonal density with off-diagonal coefficient q = re[,im], |q| < 1/2
    #[arg(long, value_name = "RE[,IM]", value_parser = parse_complex, allow_hyphen_values = true)]
    tridiagonal: Option<Complex64>,

    /// Series truncation order (defaults: 256 for fGn, 4m+16 for band order m)
    #[arg(long = "N", value_name = "ORDER")]
    n: Option<usize>,

    /// Quadrature tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Side length of the emitted/validated block
    #[arg(long = "block", default_value_t = 5)]
    block_n: usize,

    /// Finite-section size for the validation oracle
    #[arg(long = "oracle-m", default_value_t = 1000)]
    oracle_m: usize,

    /// Largest acceptable max-abs gap between pipeline and oracle (validate)
    #[arg(long)]
    bound: Option<f64>,

    /// Use the tridiagonal closed form instead of the series route (invert)
    #[arg(long)]
    closed_form: bool,

    /// Output format for matrices
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

impl From<Format> for MatrixFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => MatrixFormat::Json,
            Format::Csv => MatrixFormat::Csv,
            Format::Table => MatrixFormat::Table,
        }
    }
}

/// `re` or `re,im` as a complex number.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let parse = |part: &str| {
        part.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{part}` is not a number"))
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

// ---------------------------------------------------------------------------
// Failure plumbing
// ---------------------------------------------------------------------------

struct Failure {
    code: u8,
    message: String,
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

/// Errors raised while building the configuration are the user's parameters.
fn during_config(e: Error) -> Failure {
    config_error(e.to_string())
}

/// Errors raised mid-computation split by kind: bad parameters that only
/// surface downstream are still configuration errors; everything else is a
/// genuine numeric failure.
fn during_compute(e: Error) -> Failure {
    let code = match e {
        Error::Domain(_) | Error::InvalidInput(_) | Error::OutOfRange(_) => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct RunConfig {
    density: Density,
    /// Set when the density came from --tridiagonal, enabling --closed-form.
    tridiagonal: Option<TridiagonalSpec>,
    n: usize,
    tol: f64,
    block_n: usize,
    oracle_m: usize,
    bound: Option<f64>,
    closed_form: bool,
    format: MatrixFormat,
    out: Option<PathBuf>,
}

impl RunConfig {
    fn from_args(args: &RunArgs) -> Result<Self, Failure> {
        let (density, tridiagonal) = if let Some(h) = args.fgn {
            (
                Density::Fgn(szego::FgnDensity::new(h).map_err(during_config)?),
                None,
            )
        } else if let Some(spec) = &args.banded {
            (parse_banded(spec)?, None)
        } else {
            let q = args.tridiagonal.expect("clap guarantees one density flag");
            let spec = TridiagonalSpec::new(q).map_err(during_config)?;
            (Density::Banded(spec.density()), Some(spec))
        };

        let n = args.n.unwrap_or_else(|| match density.band_order() {
            Some(m) => 4 * m + 16,
            None => 256,
        });

        if args.tol <= 0.0 || !args.tol.is_finite() {
            return Err(config_error(format!(
                "--tol must be positive and finite, got {}",
                args.tol
            )));
        }
        if args.block_n == 0 {
            return Err(config_error("--block must be at least 1"));
        }
        if n + 1 < args.block_n {
            return Err(config_error(format!(
                "truncation order {n} cannot support a {0}x{0} block; need --N >= {1}",
                args.block_n,
                args.block_n - 1
            )));
        }
        if args.oracle_m < args.block_n {
            return Err(config_error(format!(
                "--oracle-m {} is smaller than the requested block {}",
                args.oracle_m, args.block_n
            )));
        }
        if args.closed_form && tridiagonal.is_none() {
            return Err(config_error("--closed-form requires --tridiagonal"));
        }

        Ok(RunConfig {
            density,
            tridiagonal,
            n,
            tol: args.tol,
            block_n: args.block_n,
            oracle_m: args.oracle_m,
            bound: args.bound,
            closed_form: args.closed_form,
            format: args.format.into(),
            out: args.out.clone(),
        })
    }
}

/// `identity`, inline JSON (starts with '{'), or a path to a spec file.
fn parse_banded(value: &str) -> Result<Density, Failure> {
    if value == "identity" {
        return Ok(Density::Banded(BandedDensity::identity()));
    }
    let text = if value.trim_start().starts_with('{') {
        value.to_string()
    } else {
        std::fs::read_to_string(value)
            .map_err(|e| config_error(format!("cannot read density spec `{value}`: {e}")))?
    };
    szego::parse_density_spec(&text).map_err(during_config)
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<(), Failure> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| config_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// The quadrature + recursion route shared by every command that needs the
/// inverse-Szego series.
fn psi_series(cfg: &RunConfig) -> Result<transform::CoefficientSeries, Failure> {
    let u = transform::log_fourier_coefficients(&cfg.density, cfg.n, cfg.tol)
        .map_err(during_compute)?;
    transform::psi_coefficients(&u, cfg.n).map_err(during_compute)
}

fn cmd_coeffs(cfg: &RunConfig) -> Result<ExitCode, Failure> {
    let u = transform::log_fourier_coefficients(&cfg.density, cfg.n, cfg.tol)
        .map_err(during_compute)?;
    let a = transform::psi_coefficients(&u, cfg.n).map_err(during_compute)?;
    let c = transform::szego_coefficients(&u, cfg.n).map_err(during_compute)?;
    let text = szego::coefficients_json(&u, &a, &c).map_err(during_compute)?;
    write_output(cfg, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_invert(cfg: &RunConfig) -> Result<ExitCode, Failure> {
    let block = if cfg.closed_form {
        let spec = cfg.tridiagonal.as_ref().expect("checked at configuration");
        szego::tridiagonal_inverse_block(spec, cfg.block_n).map_err(during_compute)?
    } else {
        inverse::inverse_block(&psi_series(cfg)?, cfg.block_n).map_err(during_compute)?
    };
    write_output(cfg, &szego::render_matrix(&block, cfg.format))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(cfg: &RunConfig) -> Result<ExitCode, Failure> {
    let bound = cfg
        .bound
        .ok_or_else(|| config_error("validate needs --bound <MAX_ABS_DIFF>"))?;
    if bound <= 0.0 || !bound.is_finite() {
        return Err(config_error(format!(
            "--bound must be positive and finite, got {bound}"
        )));
    }

    let block = inverse::inverse_block(&psi_series(cfg)?, cfg.block_n).map_err(during_compute)?;
    let g = oracle::finite_section_matrix(&cfg.density, cfg.oracle_m, cfg.tol)
        .map_err(during_compute)?;
    let section = oracle::finite_section_inverse_block(&g, cfg.block_n).map_err(during_compute)?;
    let report = oracle::compare_blocks(&block, &section).map_err(during_compute)?;

    write_output(cfg, &szego::oracle_report_json(&report))?;
    if report.max_abs_diff <= bound {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "validation failed: max |diff| = {:e} exceeds bound {:e}",
            report.max_abs_diff, bound
        );
        Ok(ExitCode::from(EXIT_BOUND))
    }
}

fn cmd_whittle(cfg: &RunConfig) -> Result<ExitCode, Failure> {
    let block =
        inverse::whittle_block(&cfg.density, cfg.block_n, cfg.tol).map_err(during_compute)?;
    write_output(cfg, &szego::render_matrix(&block, cfg.format))?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Honors SZEGO_THREADS as a cap on the global worker pool.
fn init_threads() -> Result<(), Failure> {
    match std::env::var("SZEGO_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw.parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
                config_error(format!(
                    "SZEGO_THREADS must be a positive integer, got `{raw}`"
                ))
            })?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| config_error(format!("thread pool: {e}")))
        }
    }
}

fn try_main() -> Result<ExitCode, Failure> {
    let cli = Cli::parse();
    init_threads()?;
    let cfg = RunConfig::from_args(cli.command.args())?;
    match cli.command {
        Command::Coeffs(_) => cmd_coeffs(&cfg),
        Command::Invert(_) => cmd_invert(&cfg),
        Command::Validate(_) => cmd_validate(&cfg),
        Command::Whittle(_) => cmd_whittle(&cfg),
    }
}

fn main() -> ExitCode {
    match try_main() {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
