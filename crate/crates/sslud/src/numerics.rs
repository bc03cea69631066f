//! Shared numerical kernel: safeguarded scalar root finding, bracketed 1-D
//! maximization, adaptive quadrature, and reproducible RNG streams.
//!
//! All routines are pure functions of their inputs. The RNG is the only
//! stateful object and is owned by exactly one caller at a time; parallel
//! work must use distinct stream ids.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default absolute tolerance for [`find_root`].
pub const ROOT_TOL: f64 = 1e-10;
/// Default argmax tolerance for [`maximize_scalar`].
pub const MAX_TOL: f64 = 1e-9;
/// Default absolute tolerance for [`integrate`].
pub const QUAD_TOL: f64 = 1e-10;

const MAX_ROOT_ITER: usize = 200;
const MAX_GOLDEN_ITER: usize = 200;
/// Coarse scan resolution used before golden-section refinement.
const GRID_POINTS: usize = 256;
const MAX_QUAD_PANELS: usize = 1 << 17;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("invalid bracket: lo={lo}, hi={hi} (need finite lo < hi)")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("no sign change on [{lo}, {hi}]: f(lo)={flo:e}, f(hi)={fhi:e}")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },
    #[error("function value is not finite at x={x}")]
    NonFinite { x: f64 },
    #[error("bracket [{lo}, {hi}] is too narrow for tolerance {tol}")]
    EmptyBracket { lo: f64, hi: f64, tol: f64 },
    #[error("quadrature stalled after {panels} panels (singularity near x={x}?)")]
    MaxDepthExceeded { x: f64, panels: usize },
}

/// A finite search interval with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericsError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(NumericsError::InvalidBracket { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

fn eval_finite<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, NumericsError> {
    let y = f(x);
    if y.is_nan() {
        Err(NumericsError::NonFinite { x })
    } else {
        Ok(y)
    }
}

fn eval_strict<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, NumericsError> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(NumericsError::NonFinite { x })
    }
}

/// Newton-Raphson with a bisection safeguard on a sign-changing bracket.
///
/// The Newton step uses a central finite-difference slope with probe points
/// clamped into the bracket, so `f` is never evaluated outside `[lo, hi]`.
/// Steps that leave the current bracket or fail to reduce `|f|` fall back to
/// bisection, which guarantees convergence whenever `f(lo) * f(hi) <= 0`.
/// Returns `x` with `|f(x)| <= tol`, or the best point once the bracket has
/// collapsed below `tol`.
pub fn find_root<F: Fn(f64) -> f64>(
    f: F,
    bracket: Bracket,
    x0: f64,
    tol: f64,
) -> Result<f64, NumericsError> {
    assert!(tol > 0.0, "find_root: tol must be positive");
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut flo = eval_strict(&f, lo)?;
    let mut fhi = eval_strict(&f, hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(NumericsError::NoSignChange { lo, hi, flo, fhi });
    }

    let mut x = x0.clamp(lo, hi);
    let mut fx = eval_strict(&f, x)?;
    for _ in 0..MAX_ROOT_ITER {
        if fx.abs() <= tol {
            return Ok(x);
        }
        // Shrink the bracket around the sign change.
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if hi - lo <= tol {
            break;
        }

        // Newton trial with a clamped central finite difference.
        let h = 1e-6 * (1.0 + x.abs());
        let xl = (x - h).max(lo);
        let xr = (x + h).min(hi);
        let slope = if xr > xl {
            (eval_strict(&f, xr)? - eval_strict(&f, xl)?) / (xr - xl)
        } else {
            0.0
        };
        let newton = x - fx / slope;
        let candidate = if slope.is_finite() && slope != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let fc = eval_strict(&f, candidate)?;
        if fc.abs() < fx.abs() || candidate == 0.5 * (lo + hi) {
            x = candidate;
            fx = fc;
        } else {
            // Newton made no progress: bisect instead.
            x = 0.5 * (lo + hi);
            fx = eval_strict(&f, x)?;
        }
    }
    // Bracket collapsed (or iteration budget spent): report the best point.
    let mid = 0.5 * (lo + hi);
    let fmid = eval_strict(&f, mid)?;
    let best = [(x, fx), (mid, fmid), (lo, flo), (hi, fhi)]
        .into_iter()
        .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap_or(Ordering::Equal))
        .unwrap();
    Ok(best.0)
}

/// Maximize a bounded-above function over a bracket.
///
/// A 256-point uniform scan locates the best cell, then golden-section
/// refinement narrows the argmax to within `tol`. The scan survives
/// non-concave objectives; golden section handles kinks. Probes returning
/// `-inf` are treated as ordinary (very bad) values so that callers may
/// encode infeasibility that way; `NaN` or `+inf` is an error.
pub fn maximize_scalar<F: Fn(f64) -> f64>(
    f: F,
    bracket: Bracket,
    tol: f64,
) -> Result<(f64, f64), NumericsError> {
    assert!(tol > 0.0, "maximize_scalar: tol must be positive");
    let (lo, hi) = (bracket.lo, bracket.hi);
    if hi - lo <= 2.0 * tol {
        return Err(NumericsError::EmptyBracket { lo, hi, tol });
    }

    let step = (hi - lo) / (GRID_POINTS - 1) as f64;
    let grid_at = |i: usize| {
        if i == GRID_POINTS - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..GRID_POINTS {
        let x = grid_at(i);
        let v = f(x);
        if v.is_nan() || v == f64::INFINITY {
            return Err(NumericsError::NonFinite { x });
        }
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }

    let mut a = grid_at(best_i.saturating_sub(1));
    let mut b = grid_at((best_i + 1).min(GRID_POINTS - 1));
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = eval_finite(&f, c)?;
    let mut fd = eval_finite(&f, d)?;
    let mut iter = 0;
    while b - a > tol && iter < MAX_GOLDEN_ITER {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = eval_finite(&f, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = eval_finite(&f, d)?;
        }
        iter += 1;
    }
    let x = 0.5 * (a + b);
    let fx = eval_finite(&f, x)?;
    // Keep the grid winner if refinement somehow lost it (kinked objectives).
    if best_v > fx {
        Ok((grid_at(best_i), best_v))
    } else {
        Ok((x, fx))
    }
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap by error estimate.
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn make_panel<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
) -> Result<Panel, NumericsError> {
    let m = 0.5 * (a + b);
    let fm = eval_strict(f, m)?;
    let l = 0.5 * (a + m);
    let r = 0.5 * (m + b);
    let fl = eval_strict(f, l)?;
    let fr = eval_strict(f, r)?;
    let h = b - a;
    let s1 = h / 6.0 * (fa + 4.0 * fm + fb);
    let s2 = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
    let diff = s2 - s1;
    Ok(Panel {
        a,
        b,
        fa,
        fm,
        fb,
        value: s2 + diff / 15.0,
        error: (diff / 15.0).abs(),
    })
}

/// Globally adaptive Simpson quadrature over a finite interval.
///
/// Panels are kept in a worst-error-first heap and bisected until the summed
/// error estimate drops below `tol`, which converges even for integrable
/// endpoint singularities. Callers split semi-infinite integrals analytically
/// or truncate where the integrand is below machine-negligible mass.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, NumericsError> {
    assert!(tol > 0.0, "integrate: tol must be positive");
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(NumericsError::InvalidBracket { lo, hi });
    }
    let fa = eval_strict(&f, lo)?;
    let fb = eval_strict(&f, hi)?;
    let mut heap = BinaryHeap::new();
    let root = make_panel(&f, lo, fa, hi, fb)?;
    let mut total_err = root.error;
    heap.push(root);
    let mut panels = 1usize;

    while total_err > tol {
        let worst = heap.pop().expect("heap holds at least one panel");
        if panels >= MAX_QUAD_PANELS || worst.b - worst.a < f64::EPSILON * (1.0 + worst.a.abs()) {
            return Err(NumericsError::MaxDepthExceeded {
                x: 0.5 * (worst.a + worst.b),
                panels,
            });
        }
        total_err -= worst.error;
        let m = 0.5 * (worst.a + worst.b);
        let left = make_panel(&f, worst.a, worst.fa, m, worst.fm)?;
        let right = make_panel(&f, m, worst.fm, worst.b, worst.fb)?;
        total_err += left.error + right.error;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }
    Ok(heap.iter().map(|p| p.value).sum())
}

/// A reproducible random stream: a (seed, stream id) pair naming one ChaCha8
/// sequence. Equal pairs reproduce bitwise-identical draws; distinct stream
/// ids give statistically independent streams under the same seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Instantiate the generator positioned at the start of the stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Uniform draw on the open interval (0, 1).
pub fn uniform_open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}
