//! C ABI for the SSLUD library.
//!
//! Conventions: every fallible entry point returns an [`SsludStatus`] and
//! writes its result through out-pointers; distributions and generators are
//! opaque handles created by `sslud_*_new` and released by `sslud_*_free`.
//! All pointers must be non-null and, for arrays, valid for the stated
//! length. The generated header lives at `include/sslud.h`.

use std::slice;

use rand_chacha::ChaCha8Rng;
use sslud::dist::{DistError, SsludParams};
use sslud::estimation::{fit_mle_default, fit_mom, Branch, FitResult, Sample};
use sslud::numerics::RngStream;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsludStatus {
    Ok = 0,
    /// A pointer argument was null.
    NullPointer = 1,
    /// A parameter or argument was outside its domain.
    InvalidArgument = 2,
    /// The reliability underflowed to zero; the hazard is undefined there.
    DegenerateTail = 3,
    /// Estimation failed (empty or non-finite data, or no feasible bracket).
    FitFailed = 4,
}

fn status_of(err: &DistError) -> SsludStatus {
    match err {
        DistError::DegenerateTail { .. } => SsludStatus::DegenerateTail,
        _ => SsludStatus::InvalidArgument,
    }
}

/// Opaque SSLUD(mu) distribution handle.
pub struct SsludDist {
    params: SsludParams,
}

/// Opaque reproducible random generator handle.
pub struct SsludRng {
    rng: ChaCha8Rng,
}

/// Branch tag mirrored into C.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsludBranch {
    NegativeMu = -1,
    NotApplicable = 0,
    PositiveMu = 1,
}

/// Fit output: the estimate, its log-likelihood, and information criteria.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SsludFit {
    pub mu: f64,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    /// Nonzero when the estimate sat against a search or clamp boundary.
    pub boundary_hit: i32,
    pub branch: SsludBranch,
}

impl From<&FitResult> for SsludFit {
    fn from(fit: &FitResult) -> Self {
        SsludFit {
            mu: fit.sslud_mu().unwrap_or(f64::NAN),
            loglik: fit.loglik,
            aic: fit.aic,
            bic: fit.bic,
            boundary_hit: fit.boundary_hit as i32,
            branch: match fit.branch {
                Branch::NegativeMu => SsludBranch::NegativeMu,
                Branch::PositiveMu => SsludBranch::PositiveMu,
                Branch::NotApplicable => SsludBranch::NotApplicable,
            },
        }
    }
}

/// Create a distribution handle. Returns null when `mu` is zero or
/// non-finite.
#[no_mangle]
pub extern "C" fn sslud_dist_new(mu: f64) -> *mut SsludDist {
    match SsludParams::new(mu) {
        Ok(params) => Box::into_raw(Box::new(SsludDist { params })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Release a distribution handle. Null is a no-op.
///
/// # Safety
/// `dist` must be null or a pointer returned by [`sslud_dist_new`] that has
/// not yet been freed.
#[no_mangle]
pub unsafe extern "C" fn sslud_dist_free(dist: *mut SsludDist) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

unsafe fn dist_ref<'a>(dist: *const SsludDist) -> Option<&'a SsludDist> {
    dist.as_ref()
}

macro_rules! write_out {
    ($out:ident, $value:expr) => {{
        if $out.is_null() {
            return SsludStatus::NullPointer;
        }
        *$out = $value;
        SsludStatus::Ok
    }};
}

/// Read back the parameter of a distribution handle.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_dist_mu(dist: *const SsludDist, out: *mut f64) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.mu()),
        None => SsludStatus::NullPointer,
    }
}

/// Density at `x`.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_pdf(
    dist: *const SsludDist,
    x: f64,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.pdf(x)),
        None => SsludStatus::NullPointer,
    }
}

/// Distribution function at `x`.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_cdf(
    dist: *const SsludDist,
    x: f64,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.cdf(x)),
        None => SsludStatus::NullPointer,
    }
}

/// Reliability `1 - G(x)`.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_reliability(
    dist: *const SsludDist,
    x: f64,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.reliability(x)),
        None => SsludStatus::NullPointer,
    }
}

/// Mean deviation `E|X - a|` about `a`.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_mean_deviation(
    dist: *const SsludDist,
    a: f64,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.mean_deviation(a)),
        None => SsludStatus::NullPointer,
    }
}

/// Quantile at probability `r` in (0, 1).
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_quantile(
    dist: *const SsludDist,
    r: f64,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => match d.params.quantile(r) {
            Ok(v) => write_out!(out, v),
            Err(e) => status_of(&e),
        },
        None => SsludStatus::NullPointer,
    }
}

/// Hazard rate at `x`; fails with `DegenerateTail` where the reliability is
/// exactly zero.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_hazard(
    dist: *const SsludDist,
    x: f64,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => match d.params.hazard(x) {
            Ok(v) => write_out!(out, v),
            Err(e) => status_of(&e),
        },
        None => SsludStatus::NullPointer,
    }
}

/// Moment generating function at `t` (domain `t < 1` for positive mu,
/// mirrored otherwise).
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_mgf(
    dist: *const SsludDist,
    t: f64,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => match d.params.mgf(t) {
            Ok(v) => write_out!(out, v),
            Err(e) => status_of(&e),
        },
        None => SsludStatus::NullPointer,
    }
}

/// Raw moment of order 1..=4.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_raw_moment(
    dist: *const SsludDist,
    order: u32,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => {
            if !(1..=4).contains(&order) {
                return SsludStatus::InvalidArgument;
            }
            write_out!(out, d.params.raw_moment(order))
        }
        None => SsludStatus::NullPointer,
    }
}

/// Mode of the distribution.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_mode(dist: *const SsludDist, out: *mut f64) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.mode()),
        None => SsludStatus::NullPointer,
    }
}

/// Median of the distribution.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_median(dist: *const SsludDist, out: *mut f64) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.median()),
        None => SsludStatus::NullPointer,
    }
}

/// Mean, variance, skewness, and kurtosis written to `out[0..4]`.
///
/// # Safety
/// `dist` must be a live handle and `out` writable for 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn sslud_summary_measures(
    dist: *const SsludDist,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => {
            if out.is_null() {
                return SsludStatus::NullPointer;
            }
            let m = d.params.summary_measures();
            let dst = slice::from_raw_parts_mut(out, 4);
            dst.copy_from_slice(&[m.mean, m.variance, m.skewness, m.kurtosis]);
            SsludStatus::Ok
        }
        None => SsludStatus::NullPointer,
    }
}

/// Renyi entropy of integer order `alpha >= 2`, in bits.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_renyi_entropy(
    dist: *const SsludDist,
    alpha: u32,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => match d.params.renyi_entropy(alpha) {
            Ok(v) => write_out!(out, v),
            Err(e) => status_of(&e),
        },
        None => SsludStatus::NullPointer,
    }
}

/// Shannon entropy in bits.
///
/// # Safety
/// `dist` must be a live handle and `out` a writable f64.
#[no_mangle]
pub unsafe extern "C" fn sslud_shannon_entropy(
    dist: *const SsludDist,
    out: *mut f64,
) -> SsludStatus {
    match dist_ref(dist) {
        Some(d) => write_out!(out, d.params.shannon_entropy()),
        None => SsludStatus::NullPointer,
    }
}

/// Create a generator at the start of stream (`seed`, `stream_id`). Equal
/// pairs reproduce identical draw sequences.
#[no_mangle]
pub extern "C" fn sslud_rng_new(seed: u64, stream_id: u64) -> *mut SsludRng {
    Box::into_raw(Box::new(SsludRng {
        rng: RngStream::new(seed, stream_id).rng(),
    }))
}

/// Release a generator handle. Null is a no-op.
///
/// # Safety
/// `rng` must be null or a pointer returned by [`sslud_rng_new`] that has
/// not yet been freed.
#[no_mangle]
pub unsafe extern "C" fn sslud_rng_free(rng: *mut SsludRng) {
    if !rng.is_null() {
        drop(Box::from_raw(rng));
    }
}

/// Draw `n` variates into `out`, advancing the generator.
///
/// # Safety
/// `dist` and `rng` must be live handles and `out` writable for `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn sslud_sample(
    dist: *const SsludDist,
    rng: *mut SsludRng,
    n: usize,
    out: *mut f64,
) -> SsludStatus {
    let Some(d) = dist_ref(dist) else {
        return SsludStatus::NullPointer;
    };
    let Some(r) = rng.as_mut() else {
        return SsludStatus::NullPointer;
    };
    if out.is_null() {
        return SsludStatus::NullPointer;
    }
    let draws = d.params.sample_with(n, &mut r.rng);
    slice::from_raw_parts_mut(out, n).copy_from_slice(&draws);
    SsludStatus::Ok
}

unsafe fn sample_from_raw(data: *const f64, len: usize) -> Result<Sample, SsludStatus> {
    if data.is_null() {
        return Err(SsludStatus::NullPointer);
    }
    if len == 0 {
        return Err(SsludStatus::InvalidArgument);
    }
    Sample::new(slice::from_raw_parts(data, len).to_vec()).map_err(|_| SsludStatus::FitFailed)
}

/// Two-branch maximum likelihood fit of SSLUD(mu) to `data[0..len]`.
///
/// # Safety
/// `data` must be readable for `len` doubles and `out` a writable
/// [`SsludFit`].
#[no_mangle]
pub unsafe extern "C" fn sslud_fit_mle(
    data: *const f64,
    len: usize,
    out: *mut SsludFit,
) -> SsludStatus {
    if out.is_null() {
        return SsludStatus::NullPointer;
    }
    let sample = match sample_from_raw(data, len) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match fit_mle_default(&sample) {
        Ok(fit) => {
            *out = SsludFit::from(&fit);
            SsludStatus::Ok
        }
        Err(_) => SsludStatus::FitFailed,
    }
}

/// Method-of-moments fit of SSLUD(mu) to `data[0..len]`.
///
/// # Safety
/// `data` must be readable for `len` doubles and `out` a writable
/// [`SsludFit`].
#[no_mangle]
pub unsafe extern "C" fn sslud_fit_mom(
    data: *const f64,
    len: usize,
    out: *mut SsludFit,
) -> SsludStatus {
    if out.is_null() {
        return SsludStatus::NullPointer;
    }
    let sample = match sample_from_raw(data, len) {
        Ok(s) => s,
        Err(status) => return status,
    };
    *out = SsludFit::from(&fit_mom(&sample));
    SsludStatus::Ok
}
