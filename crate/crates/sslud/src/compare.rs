//! Four-model comparison: SSLUD, skew-Laplace, Laplace, and Normal fits on
//! one sample, ranked by AIC and BIC, plus the observed/expected density
//! overlay behind the comparison figures.

use thiserror::Error;

use crate::baselines::{
    laplace_mle, normal_mle, skew_laplace_mle, skew_laplace_pdf, LaplaceParams, NormalParams,
    SKEW_LAPLACE_BRACKET,
};
use crate::dist::SsludParams;
use crate::estimation::{fit_mle_default, Branch, FitResult, Model, ModelParams, Sample};
use crate::numerics::Bracket;
use crate::simstudy::{sturges_bins, HistBin};

#[derive(Debug, Error)]
pub enum CompareError {
    #[error("comparison needs at least 3 observations, got {0}")]
    TooFew(usize),
    #[error("every model failed to fit; first error: {0}")]
    AllModelsFailed(String),
}

/// Per-model fits on one sample with AIC/BIC ranking. Models that fail to
/// fit are recorded in `errors` and excluded from the ranking.
#[derive(Debug, Clone)]
pub struct ModelComparison {
    pub fits: Vec<FitResult>,
    pub errors: Vec<(Model, String)>,
    pub n: usize,
    pub best_aic: Model,
    pub best_bic: Model,
}

impl ModelComparison {
    pub fn fit(&self, model: Model) -> Option<&FitResult> {
        self.fits.iter().find(|f| f.model == model)
    }
}

/// Fit all four models. SSLUD and SL carry one parameter, Laplace and
/// Normal two.
pub fn fit_compare(data: &Sample) -> Result<ModelComparison, CompareError> {
    if data.n() < 3 {
        return Err(CompareError::TooFew(data.n()));
    }
    let n = data.n();
    let mut fits = Vec::new();
    let mut errors: Vec<(Model, String)> = Vec::new();

    match fit_mle_default(data) {
        Ok(fit) => fits.push(fit),
        Err(e) => errors.push((Model::Sslud, e.to_string())),
    }
    let bracket = Bracket::new(SKEW_LAPLACE_BRACKET.0, SKEW_LAPLACE_BRACKET.1)
        .expect("default bracket is valid");
    match skew_laplace_mle(data, bracket) {
        Ok(fit) => fits.push(FitResult::new(
            Model::SkewLaplace,
            ModelParams::SkewLaplace(fit.params),
            fit.loglik,
            1,
            n,
            fit.boundary_hit,
            Branch::NotApplicable,
        )),
        Err(e) => errors.push((Model::SkewLaplace, e.to_string())),
    }
    match laplace_mle(data) {
        Ok((params, loglik)) => fits.push(FitResult::new(
            Model::Laplace,
            ModelParams::Laplace(params),
            loglik,
            2,
            n,
            false,
            Branch::NotApplicable,
        )),
        Err(e) => errors.push((Model::Laplace, e.to_string())),
    }
    match normal_mle(data) {
        Ok((params, loglik)) => fits.push(FitResult::new(
            Model::Normal,
            ModelParams::Normal(params),
            loglik,
            2,
            n,
            false,
            Branch::NotApplicable,
        )),
        Err(e) => errors.push((Model::Normal, e.to_string())),
    }

    let by_key = |key: fn(&FitResult) -> f64| {
        fits.iter()
            .min_by(|a, b| key(a).partial_cmp(&key(b)).expect("finite criteria"))
            .map(|f| f.model)
    };
    let best_aic = by_key(|f| f.aic)
        .ok_or_else(|| CompareError::AllModelsFailed(errors[0].1.clone()))?;
    let best_bic = by_key(|f| f.bic).expect("nonempty fits");
    Ok(ModelComparison { fits, errors, n, best_aic, best_bic })
}

/// One row of the density overlay: observed histogram density and each
/// fitted model's density at `x`. Missing fits yield `None`.
#[derive(Debug, Clone)]
pub struct OverlayRow {
    pub x: f64,
    pub histogram: f64,
    pub sslud: Option<f64>,
    pub skew_laplace: Option<f64>,
    pub laplace: Option<f64>,
    pub normal: Option<f64>,
}

/// Plot-ready observed/expected densities: `rows` sample everything on a
/// uniform grid over `[min - 1, max + 1]`; `bins` is the underlying Sturges
/// histogram (whose mass is exactly one).
#[derive(Debug, Clone)]
pub struct DensityOverlay {
    pub rows: Vec<OverlayRow>,
    pub bins: Vec<HistBin>,
}

fn normal_pdf(p: &NormalParams, x: f64) -> f64 {
    let z = (x - p.theta) * (x - p.theta) / (2.0 * p.sigma2);
    (-z).exp() / (2.0 * std::f64::consts::PI * p.sigma2).sqrt()
}

fn laplace_pdf(p: &LaplaceParams, x: f64) -> f64 {
    (-(x - p.theta).abs() / p.beta).exp() / (2.0 * p.beta)
}

/// Evaluate the fitted densities of `comparison` on a `grid`-point overlay.
pub fn emit_density_overlay(
    data: &Sample,
    comparison: &ModelComparison,
    grid: usize,
) -> DensityOverlay {
    assert!(grid >= 16, "overlay grid must have at least 16 points");
    let (lo, hi) = (data.min() - 1.0, data.max() + 1.0);
    // Degenerate (constant) data gets one unit-width bin.
    let (nbins, bin_lo, bin_w) = if data.max() > data.min() {
        let nbins = sturges_bins(data.n());
        (nbins, data.min(), (data.max() - data.min()) / nbins as f64)
    } else {
        (1, data.min() - 0.5, 1.0)
    };
    let mut counts = vec![0usize; nbins];
    for &v in data.values() {
        let i = (((v - bin_lo) / bin_w) as usize).min(nbins - 1);
        counts[i] += 1;
    }
    let bins: Vec<HistBin> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistBin {
            lo: bin_lo + bin_w * i as f64,
            hi: bin_lo + bin_w * (i + 1) as f64,
            density: c as f64 / (data.n() as f64 * bin_w),
        })
        .collect();
    let bin_hi = bin_lo + bin_w * nbins as f64;
    let hist_at = |x: f64| {
        if x < bin_lo || x > bin_hi {
            0.0
        } else {
            let i = (((x - bin_lo) / bin_w) as usize).min(nbins - 1);
            bins[i].density
        }
    };

    let sslud = comparison.fit(Model::Sslud).map(|f| match f.params {
        ModelParams::Sslud(p) => p,
        _ => unreachable!(),
    });
    let sl = comparison.fit(Model::SkewLaplace).map(|f| match f.params {
        ModelParams::SkewLaplace(p) => p,
        _ => unreachable!(),
    });
    let lap = comparison.fit(Model::Laplace).map(|f| match f.params {
        ModelParams::Laplace(p) => p,
        _ => unreachable!(),
    });
    let norm = comparison.fit(Model::Normal).map(|f| match f.params {
        ModelParams::Normal(p) => p,
        _ => unreachable!(),
    });

    let rows = (0..grid)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
            OverlayRow {
                x,
                histogram: hist_at(x),
                sslud: sslud.map(|p: SsludParams| p.pdf(x)),
                skew_laplace: sl.map(|p| skew_laplace_pdf(p, x)),
                laplace: lap.as_ref().map(|p| laplace_pdf(p, x)),
                normal: norm.as_ref().map(|p| normal_pdf(p, x)),
            }
        })
        .collect();
    DensityOverlay { rows, bins }
}
