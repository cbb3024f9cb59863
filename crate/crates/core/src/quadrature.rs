//! Panel-based Gauss-Legendre quadrature on (0, 1).
//!
//! The integrands this crate cares about are smooth inside the interval but
//! can blow up, vanish, or lose relative precision at the endpoints (log
//! singularities, |t|^alpha behavior), and they oscillate when a Fourier
//! mode is attached. The scheme here:
//!
//! * the interval is tiled with panels that shrink dyadically into each
//!   endpoint, so endpoint singularities are resolved geometrically;
//! * each abscissa carries both `t` and `1 - t`, with the panel anchored to
//!   whichever endpoint it is near, so an integrand can read off its distance
//!   to either endpoint at full relative precision no matter how deep the
//!   subdivision goes;
//! * every panel is evaluated with nested 20- and 40-point Gauss-Legendre
//!   rules; their difference is the error indicator;
//! * adaptive refinement bisects the worst panel until the summed indicator
//!   drops below the requested tolerance.
//!
//! Refinement order, and therefore the final floating-point value, is fully
//! deterministic.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// A quadrature abscissa with its distance to both endpoints.
///
/// `omt` is `1 - t` computed exactly from the panel geometry, not by the
/// subtraction `1.0 - t`; near the right endpoint it is the only way to know
/// where the point actually is.
#[derive(Clone, Copy, Debug)]
pub struct EvalPoint {
    pub t: f64,
    pub omt: f64,
}

impl EvalPoint {
    /// For points far from the right endpoint the naive subtraction is exact
    /// enough; this is the constructor for user-facing evaluations.
    pub fn new(t: f64) -> Self {
        EvalPoint { t, omt: 1.0 - t }
    }

    /// sin(pi t), evaluated through whichever endpoint distance is smaller,
    /// so it keeps full relative precision at both ends.
    pub fn sin_pi(&self) -> f64 {
        (PI * self.t.min(self.omt)).sin()
    }
}

/// e^{2 pi i k t} at an abscissa, computed from the nearer endpoint:
/// for t > 1/2 this uses e^{2 pi i k t} = e^{-2 pi i k (1-t)}, which is exact
/// in exact arithmetic and keeps the phase accurate in floating point.
pub fn circle_exp(k: i64, p: EvalPoint) -> Complex64 {
    let ang = if p.t <= 0.5 {
        2.0 * PI * (k as f64) * p.t
    } else {
        -2.0 * PI * (k as f64) * p.omt
    };
    Complex64::new(ang.cos(), ang.sin())
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rules
// ---------------------------------------------------------------------------

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on P_n from the usual cosine initial guesses.
fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..60 {
            let (p, d) = legendre_p_dp(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                let (p2, d2) = legendre_p_dp(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// P_n(x) and P_n'(x) via the three-term recurrence.
fn legendre_p_dp(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

static GL_LOW: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
static GL_HIGH: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();

pub(crate) const GL_LOW_N: usize = 20;
pub(crate) const GL_HIGH_N: usize = 40;

pub(crate) fn gl_low() -> &'static (Vec<f64>, Vec<f64>) {
    GL_LOW.get_or_init(|| legendre_rule(GL_LOW_N))
}

pub(crate) fn gl_high() -> &'static (Vec<f64>, Vec<f64>) {
    GL_HIGH.get_or_init(|| legendre_rule(GL_HIGH_N))
}

// ---------------------------------------------------------------------------
// Panels
// ---------------------------------------------------------------------------

/// One subinterval, described by its distance to the anchoring endpoint.
///
/// `from_right = false`: the panel is [off, off + width] in t.
/// `from_right = true`: the panel is [1 - off - width, 1 - off] in t, and
/// positions are tracked as distances from 1 so they stay exact under deep
/// subdivision near the right endpoint.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Panel {
    off: f64,
    width: f64,
    from_right: bool,
}

impl Panel {
    /// Map a rule abscissa xi in (-1, 1) to a point of this panel.
    fn point(&self, xi: f64) -> EvalPoint {
        let d = self.off + 0.5 * self.width * (xi + 1.0);
        if self.from_right {
            EvalPoint { t: 1.0 - d, omt: d }
        } else {
            EvalPoint { t: d, omt: 1.0 - d }
        }
    }

    fn halves(&self) -> (Panel, Panel) {
        let w = 0.5 * self.width;
        (
            Panel {
                off: self.off,
                width: w,
                from_right: self.from_right,
            },
            Panel {
                off: self.off + w,
                width: w,
                from_right: self.from_right,
            },
        )
    }
}

/// Initial tiling of (0, 1): panels shrinking dyadically into both endpoints
/// down to width 2^-depth, with interior panels split until none is wider
/// than `max_width`.
pub(crate) fn initial_panels(depth: u32, max_width: f64) -> Vec<Panel> {
    let mut tiles = Vec::new();
    for from_right in [false, true] {
        // Cover (anchor, anchor + 1/2] as [0, 2^-depth] + dyadic rings.
        tiles.push(Panel {
            off: 0.0,
            width: 2f64.powi(-(depth as i32)),
            from_right,
        });
        for j in (2..=depth).rev() {
            tiles.push(Panel {
                off: 2f64.powi(-(j as i32)),
                width: 2f64.powi(-(j as i32)),
                from_right,
            });
        }
    }
    // Enforce the width cap (oscillatory integrands need panels no wider
    // than a fraction of a period).
    let mut out = Vec::new();
    for p in tiles {
        if p.width <= max_width {
            out.push(p);
            continue;
        }
        let slices = (p.width / max_width).ceil() as usize;
        let w = p.width / slices as f64;
        for i in 0..slices {
            out.push(Panel {
                off: p.off + i as f64 * w,
                width: w,
                from_right: p.from_right,
            });
        }
    }
    out
}

/// Panel width cap for an integrand carrying Fourier modes up to `osc`:
/// at most half a period of the fastest mode.
pub(crate) fn width_cap(osc: usize) -> f64 {
    if osc == 0 {
        0.25
    } else {
        0.25f64.min(0.5 / (osc as f64 + 1.0))
    }
}

// ---------------------------------------------------------------------------
// Adaptive integration
// ---------------------------------------------------------------------------

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    /// Summed 20/40-point difference over all panels; an error *indicator*,
    /// typically pessimistic by an order of magnitude.
    pub error_estimate: f64,
    pub panels: usize,
}

struct Evaluated {
    panel: Panel,
    value: Complex64,
    err: f64,
    seq: u64,
}

impl Evaluated {
    fn key(&self) -> (f64, u64) {
        (self.err, self.seq)
    }
}

impl PartialEq for Evaluated {
    fn eq(&self, other: &Self) -> bool {
        self.key().0.total_cmp(&other.key().0) == Ordering::Equal && self.seq == other.seq
    }
}
impl Eq for Evaluated {}
impl PartialOrd for Evaluated {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Evaluated {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on the error indicator; ties broken by insertion order so
        // refinement is deterministic.
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

const MAX_PANELS: usize = 20_000;
// Endpoint slivers for t^alpha integrands gain only a factor 2^(1+alpha) of
// accuracy per bisection, so integrable singularities with alpha near -1 need
// panels hundreds of levels deep. The anchored panel coordinates are exact
// dyadics at any depth; stop just short of the subnormal range.
const MIN_WIDTH: f64 = 1e-280;

fn eval_panel<F: Fn(EvalPoint) -> Complex64>(f: &F, panel: Panel, seq: u64) -> Evaluated {
    let (xl, wl) = gl_low();
    let (xh, wh) = gl_high();
    let h = 0.5 * panel.width;
    let mut low = Complex64::new(0.0, 0.0);
    for (&x, &w) in xl.iter().zip(wl) {
        low += w * f(panel.point(x));
    }
    let mut high = Complex64::new(0.0, 0.0);
    for (&x, &w) in xh.iter().zip(wh) {
        high += w * f(panel.point(x));
    }
    let value = h * high;
    let err = h * (high - low).norm();
    Evaluated {
        panel,
        value,
        err,
        seq,
    }
}

/// Integrate `f` over (0, 1) to absolute tolerance `tol`.
///
/// `osc` is the highest Fourier mode the integrand carries (0 for
/// non-oscillatory integrands); it fixes the initial panel width so the
/// error indicator of the nested rules can be trusted.
pub fn integrate<F: Fn(EvalPoint) -> Complex64>(f: F, tol: f64, osc: usize) -> Result<QuadResult> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidInput(format!(
            "quadrature tolerance must be positive and finite, got {tol}"
        )));
    }
    let mut seq: u64 = 0;
    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    for panel in initial_panels(40, width_cap(osc)) {
        let e = eval_panel(&f, panel, seq);
        seq += 1;
        total_err += e.err;
        heap.push(e);
    }

    // Refine the worst panel until the indicator is below tolerance. Panels
    // already at the minimum width are parked aside: bisecting them further
    // only reshuffles rounding noise.
    let mut parked: Vec<Evaluated> = Vec::new();
    while total_err > tol && heap.len() + parked.len() < MAX_PANELS {
        let worst = match heap.pop() {
            Some(w) => w,
            None => break,
        };
        if worst.panel.width <= MIN_WIDTH {
            parked.push(worst);
            continue;
        }
        total_err -= worst.err;
        let (a, b) = worst.panel.halves();
        for half in [a, b] {
            let e = eval_panel(&f, half, seq);
            seq += 1;
            total_err += e.err;
            heap.push(e);
        }
    }

    // Deterministic final summation: order by insertion sequence.
    let mut all: Vec<Evaluated> = heap.into_vec();
    all.extend(parked);
    all.sort_by_key(|e| e.seq);
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for e in &all {
        value += e.value;
        err += e.err;
    }

    if err > tol {
        return Err(Error::QuadratureNonConvergence {
            requested: tol,
            achieved: err,
        });
    }
    Ok(QuadResult {
        value,
        error_estimate: err,
        panels: all.len(),
    })
}

/// Adaptive integration of a real integrand; same contract as [`integrate`].
pub fn integrate_real<F: Fn(EvalPoint) -> f64>(f: F, tol: f64, osc: usize) -> Result<QuadResult> {
    integrate(move |p| Complex64::new(f(p), 0.0), tol, osc)
}

// ---------------------------------------------------------------------------
// Fixed grids for batched Fourier coefficients
// ---------------------------------------------------------------------------

/// A frozen quadrature grid: every abscissa of the low and high rule across a
/// fixed panel tiling, with weights already scaled by panel half-widths.
///
/// Batch computations (all Fourier coefficients of one function at once)
/// evaluate the function on this grid a single time and then pay only one
/// complex multiply-add per node per coefficient.
pub(crate) struct FixedGrid {
    pub low: Vec<(EvalPoint, f64)>,
    pub high: Vec<(EvalPoint, f64)>,
}

impl FixedGrid {
    pub fn new(depth: u32, max_width: f64) -> FixedGrid {
        let (xl, wl) = gl_low();
        let (xh, wh) = gl_high();
        let mut low = Vec::new();
        let mut high = Vec::new();
        for panel in initial_panels(depth, max_width) {
            let h = 0.5 * panel.width;
            for (&x, &w) in xl.iter().zip(wl) {
                low.push((panel.point(x), h * w));
            }
            for (&x, &w) in xh.iter().zip(wh) {
                high.push((panel.point(x), h * w));
            }
        }
        FixedGrid { low, high }
    }
}
