//! Estimation of the SSLUD parameter: the method of moments and the
//! two-branch maximum likelihood procedure, plus information criteria.

use thiserror::Error;

use crate::baselines::{LaplaceParams, NormalParams, SkewLaplaceParams};
use crate::dist::SsludParams;
use crate::numerics::{find_root, maximize_scalar, Bracket, NumericsError, MAX_TOL, ROOT_TOL};

#[derive(Debug, Error)]
pub enum EstimationError {
    #[error("sample must contain at least one observation")]
    EmptySample,
    #[error("sample contains a non-finite value: {0}")]
    NonFiniteValue(f64),
    #[error("no feasible likelihood bracket on either branch")]
    EmptyBracket,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Observed data with cached ascending order statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    sorted: Vec<f64>,
    abs_sum: f64,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self, EstimationError> {
        if values.is_empty() {
            return Err(EstimationError::EmptySample);
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(EstimationError::NonFiniteValue(bad));
        }
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        let abs_sum = values.iter().map(|v| v.abs()).sum();
        Ok(Self { values, sorted, abs_sum })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Observations in input order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Ascending order statistics.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        *self.sorted.last().unwrap()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.n() as f64
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    pub fn abs_max(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// Number of order statistics strictly below `t`.
    fn count_below(&self, t: f64) -> usize {
        self.sorted.partition_point(|&v| v < t)
    }

    /// Elementwise shift `x - c`.
    pub fn shifted(&self, c: f64) -> Sample {
        Sample::new(self.values.iter().map(|x| x - c).collect())
            .expect("shift of a valid sample stays valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Sslud,
    Normal,
    Laplace,
    SkewLaplace,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Sslud => "sslud",
            Model::Normal => "normal",
            Model::Laplace => "laplace",
            Model::SkewLaplace => "skew_laplace",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Sslud(SsludParams),
    Normal(NormalParams),
    Laplace(LaplaceParams),
    SkewLaplace(SkewLaplaceParams),
}

/// Which likelihood branch produced an SSLUD estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    NegativeMu,
    PositiveMu,
    NotApplicable,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::NegativeMu => "negative-mu",
            Branch::PositiveMu => "positive-mu",
            Branch::NotApplicable => "n/a",
        }
    }
}

/// Estimator output: point estimates plus fit quality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub model: Model,
    pub params: ModelParams,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub k: usize,
    pub boundary_hit: bool,
    pub branch: Branch,
}

impl FitResult {
    pub fn new(
        model: Model,
        params: ModelParams,
        loglik: f64,
        k: usize,
        n: usize,
        boundary_hit: bool,
        branch: Branch,
    ) -> Self {
        let (aic, bic) = information_criteria(loglik, k, n);
        Self { model, params, loglik, aic, bic, k, boundary_hit, branch }
    }

    /// The SSLUD parameter estimate, when this fit is an SSLUD fit.
    pub fn sslud_mu(&self) -> Option<f64> {
        match self.params {
            ModelParams::Sslud(p) => Some(p.mu()),
            _ => None,
        }
    }
}

/// `aic = 2k - 2 lnL`, `bic = k ln n - 2 lnL`.
pub fn information_criteria(loglik: f64, k: usize, n: usize) -> (f64, f64) {
    let k = k as f64;
    (2.0 * k - 2.0 * loglik, k * (n as f64).ln() - 2.0 * loglik)
}

/// Population mean of SSLUD(mu) for `mu > 0`, written with `expm1` so that
/// the `mu -> 0` limit (which tends to 1) evaluates cleanly.
fn positive_mean(mu: f64) -> f64 {
    (2.0 / mu) * (-(-mu).exp_m1()) - (-mu).exp()
}

/// Log-likelihood of `mu` for the observed sample.
///
/// Returns `-inf` (rather than an error) outside the feasible region
/// `mu < min(0, -x_(n))` or `mu > max(0, -x_(1))`, so maximizers may probe
/// freely. Inside, the branch sums run over the order statistics that fall
/// in the triangular body `[-|mu|, |mu|]`; the split index comes from a
/// binary search on the sorted sample.
pub fn sslud_loglik(mu: f64, data: &Sample) -> f64 {
    let sorted = data.sorted();
    if mu > 0.0 {
        if data.min() <= -mu {
            return f64::NEG_INFINITY;
        }
        // r2 = observations at or below mu; x = mu itself belongs to the
        // e^{-x} branch, but the density is continuous there so < vs <=
        // cannot change the value.
        let r2 = data.count_below(mu);
        let body: f64 = sorted[..r2]
            .iter()
            .map(|&x| ((x + mu) / (2.0 * mu)).ln())
            .sum();
        -data.abs_sum() + body
    } else if mu < 0.0 {
        if data.max() >= -mu {
            return f64::NEG_INFINITY;
        }
        let r1 = data.count_below(mu);
        let body: f64 = sorted[r1..]
            .iter()
            .map(|&x| ((x + mu) / (2.0 * mu)).ln())
            .sum();
        -data.abs_sum() + body
    } else {
        f64::NEG_INFINITY
    }
}

/// Method-of-moments estimate of `mu`.
///
/// Solves `mean(mu) = xbar` on the branch matching the sign of the sample
/// mean (`xbar = 0` uses the positive branch). Sample means at or beyond
/// +-1 cannot be matched by any `mu` and clamp to +-1e-5 with
/// `boundary_hit` set.
pub fn fit_mom(data: &Sample) -> FitResult {
    let xbar = data.mean();
    let (mu, boundary_hit) = if xbar <= -1.0 {
        (-1e-5, true)
    } else if xbar >= 1.0 {
        (1e-5, true)
    } else {
        let target = xbar.abs();
        let sign = if xbar < 0.0 { -1.0 } else { 1.0 };
        let (m, hit) = solve_positive_mean(target);
        (sign * m, hit)
    };
    let loglik = sslud_loglik(mu, data);
    let branch = if mu < 0.0 { Branch::NegativeMu } else { Branch::PositiveMu };
    FitResult::new(
        Model::Sslud,
        ModelParams::Sslud(SsludParams::new(mu).expect("nonzero mu")),
        loglik,
        1,
        data.n(),
        boundary_hit,
        branch,
    )
}

/// Root of `positive_mean(m) = target` for `target` in [0, 1). The mean
/// decreases from 1 to 0 over `m` in (0, inf); the bracket grows by doubling
/// until it straddles the target. A target so close to zero that no
/// representable `m` reaches it reports the cap with `boundary_hit`.
fn solve_positive_mean(target: f64) -> (f64, bool) {
    const CAP: f64 = 1e15;
    let lo0 = 1e-9;
    if positive_mean(lo0) <= target {
        return (lo0, true);
    }
    let mut lo = lo0;
    let mut hi = 1.0;
    while positive_mean(hi) > target {
        lo = hi;
        hi *= 2.0;
        if hi > CAP {
            return (CAP, true);
        }
    }
    let bracket = Bracket::new(lo, hi).expect("doubling keeps lo < hi");
    let root = find_root(
        |m| positive_mean(m) - target,
        bracket,
        bracket.midpoint(),
        ROOT_TOL,
    )
    .expect("mean equation changes sign on the doubled bracket");
    (root, false)
}

/// Default outer likelihood bound: comfortably beyond any data-supported
/// estimate while scaling with the magnitude of the observations.
pub fn default_mle_bound(data: &Sample) -> f64 {
    100f64.max(10.0 * data.abs_max())
}

/// Two-branch maximum likelihood estimate of `mu`.
///
/// Maximizes `l1` over `(-a, min(0, -x_(n)))` and `l2` over
/// `(max(0, -x_(1)), a)`, then keeps the branch with the larger maximum
/// (ties go to the positive branch). Open interval endpoints are inset by
/// `1e-9 (1 + |endpoint|)` because the likelihood is `-inf` at the feasible
/// edge itself. `boundary_hit` reports an argmax against the outer `+-a`
/// wall, which signals that `a` was chosen too small.
pub fn fit_mle(data: &Sample, a: f64) -> Result<FitResult, EstimationError> {
    assert!(a > 0.0, "fit_mle: outer bound must be positive");
    let inset = |e: f64| 1e-9 * (1.0 + e.abs());
    let mut candidates: Vec<(f64, f64, Branch, bool)> = Vec::new();

    let hi_neg = 0f64.min(-data.max());
    let (lo1, hi1) = (-a + inset(a), hi_neg - inset(hi_neg));
    if hi1 - lo1 > 2.0 * MAX_TOL {
        let bracket = Bracket::new(lo1, hi1)?;
        let (m, v) = maximize_scalar(|mu| sslud_loglik(mu, data), bracket, MAX_TOL)?;
        let hit = m - lo1 <= bracket.width() / 255.0;
        candidates.push((v, m, Branch::NegativeMu, hit));
    }

    let lo_pos = 0f64.max(-data.min());
    let (lo2, hi2) = (lo_pos + inset(lo_pos), a - inset(a));
    if hi2 - lo2 > 2.0 * MAX_TOL {
        let bracket = Bracket::new(lo2, hi2)?;
        let (m, v) = maximize_scalar(|mu| sslud_loglik(mu, data), bracket, MAX_TOL)?;
        let hit = hi2 - m <= bracket.width() / 255.0;
        candidates.push((v, m, Branch::PositiveMu, hit));
    }

    // The positive branch was pushed last; `>=` lets it take ties.
    let mut best: Option<(f64, f64, Branch, bool)> = None;
    for &c in &candidates {
        if best.is_none() || c.0 >= best.unwrap().0 {
            best = Some(c);
        }
    }
    let (loglik, mu, branch, boundary_hit) = best.ok_or(EstimationError::EmptyBracket)?;
    Ok(FitResult::new(
        Model::Sslud,
        ModelParams::Sslud(SsludParams::new(mu).expect("maximizer stays off zero")),
        loglik,
        1,
        data.n(),
        boundary_hit,
        branch,
    ))
}

/// [`fit_mle`] with the default outer bound.
pub fn fit_mle_default(data: &Sample) -> Result<FitResult, EstimationError> {
    fit_mle(data, default_mle_bound(data))
}
