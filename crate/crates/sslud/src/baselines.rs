//! Comparison models for the stock-index application: Normal(theta, sigma^2),
//! Laplace(theta, beta), and the skew-Laplace SL(lambda) built from standard
//! Laplace `f` and `K` in the skewing form `2 f(x) K(lambda x)`.

use thiserror::Error;

use crate::estimation::Sample;
use crate::numerics::{maximize_scalar, Bracket, NumericsError, MAX_TOL};

/// Default search interval for the SL(lambda) likelihood. Beyond +-50 the
/// skewing factor K(lambda x) is numerically a step function.
pub const SKEW_LAPLACE_BRACKET: (f64, f64) = (-50.0, 50.0);

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("degenerate sample: {0}")]
    DegenerateSample(&'static str),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalParams {
    pub theta: f64,
    pub sigma2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceParams {
    pub theta: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewLaplaceParams {
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewLaplaceFit {
    pub params: SkewLaplaceParams,
    pub loglik: f64,
    /// Set when the argmax landed against an edge of the search bracket.
    pub boundary_hit: bool,
}

/// Gaussian MLE: `theta` is the sample mean, `sigma2` the divide-by-n
/// variance, and the log-likelihood its closed form
/// `-(n/2) (ln(2 pi sigma2) + 1)`.
pub fn normal_mle(data: &Sample) -> Result<(NormalParams, f64), BaselineError> {
    let n = data.n() as f64;
    if data.n() < 2 {
        return Err(BaselineError::DegenerateSample("need at least 2 observations"));
    }
    let theta = data.mean();
    let sigma2 = data.values().iter().map(|x| (x - theta) * (x - theta)).sum::<f64>() / n;
    if sigma2 == 0.0 {
        return Err(BaselineError::DegenerateSample("all observations equal"));
    }
    let loglik = -(n / 2.0) * ((2.0 * std::f64::consts::PI * sigma2).ln() + 1.0);
    Ok((NormalParams { theta, sigma2 }, loglik))
}

/// Laplace MLE: `theta` is the sample median (midpoint of the two middle
/// order statistics for even n), `beta` the mean absolute deviation about it.
pub fn laplace_mle(data: &Sample) -> Result<(LaplaceParams, f64), BaselineError> {
    let n = data.n();
    if n < 2 {
        return Err(BaselineError::DegenerateSample("need at least 2 observations"));
    }
    let sorted = data.sorted();
    let theta = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    let beta = data.values().iter().map(|x| (x - theta).abs()).sum::<f64>() / n as f64;
    if beta == 0.0 {
        return Err(BaselineError::DegenerateSample("all observations equal"));
    }
    // At the MLE, sum |x - theta| / beta = n exactly.
    let loglik = -(n as f64) * ((2.0 * beta).ln() + 1.0);
    Ok((LaplaceParams { theta, beta }, loglik))
}

/// Standard Laplace distribution function.
fn laplace_cdf(y: f64) -> f64 {
    if y < 0.0 {
        0.5 * y.exp()
    } else {
        1.0 - 0.5 * (-y).exp()
    }
}

/// Its logarithm, stable for arbitrarily negative arguments.
fn laplace_log_cdf(y: f64) -> f64 {
    if y < 0.0 {
        y - std::f64::consts::LN_2
    } else {
        (-0.5 * (-y).exp()).ln_1p()
    }
}

/// SL(lambda) density: `2 (e^{-|x|}/2) K(lambda x) = e^{-|x|} K(lambda x)`.
pub fn skew_laplace_pdf(p: SkewLaplaceParams, x: f64) -> f64 {
    (-x.abs()).exp() * laplace_cdf(p.lambda * x)
}

/// SL(lambda) log-likelihood of a sample.
pub fn skew_laplace_loglik(lambda: f64, data: &Sample) -> f64 {
    -data.abs_sum() + data.values().iter().map(|&x| laplace_log_cdf(lambda * x)).sum::<f64>()
}

/// SL(lambda) MLE by grid-then-golden maximization over `bracket`.
pub fn skew_laplace_mle(data: &Sample, bracket: Bracket) -> Result<SkewLaplaceFit, BaselineError> {
    let (lambda, loglik) = maximize_scalar(|l| skew_laplace_loglik(l, data), bracket, MAX_TOL)?;
    let cell = bracket.width() / 255.0;
    let boundary_hit = lambda - bracket.lo() <= cell || bracket.hi() - lambda <= cell;
    Ok(SkewLaplaceFit {
        params: SkewLaplaceParams { lambda },
        loglik,
        boundary_hit,
    })
}
