//! The skew-symmetric-Laplace-uniform distribution SSLUD(mu).
//!
//! SSLUD(mu) is the skew family `2 f(x) K(lambda x)` built from the standard
//! Laplace density `f` and the Uniform(-theta, theta) distribution function
//! `K`, reparameterized by the single identifiable parameter `mu = theta /
//! lambda`. The uniform component both skews the Laplace shape and truncates
//! its support on one side: the support is `[-mu, inf)` for `mu > 0` and
//! `(-inf, -mu]` for `mu < 0`.
//!
//! The crate provides:
//!
//! - [`dist::SsludParams`]: density, distribution function, quantiles,
//!   inverse-transform sampling, raw moments, mode, median, reliability,
//!   hazard, mean deviation, and Renyi/Shannon entropies, all in closed form
//!   where one exists;
//! - [`estimation`]: the moment estimator and the two-branch maximum
//!   likelihood estimator of `mu`, plus AIC/BIC;
//! - [`baselines`]: Normal, Laplace, and skew-Laplace comparison fits;
//! - [`simstudy`]: reproducible Monte Carlo bias/MSE studies of the two
//!   estimators;
//! - [`compare`], [`ingest`], [`runs`], [`tables`]: the model-comparison
//!   workflow for financial return series, exposed through the `sslud` CLI.
//!
//! # Example
//!
//! ```
//! use sslud::dist::SsludParams;
//! use sslud::estimation::{fit_mle_default, Sample};
//! use sslud::numerics::RngStream;
//!
//! let p = SsludParams::new(0.75).unwrap();
//! let draws = p.sample(500, RngStream::new(7, 0));
//! let sample = Sample::new(draws).unwrap();
//! let fit = fit_mle_default(&sample).unwrap();
//! assert!((fit.sslud_mu().unwrap() - 0.75).abs() < 0.25);
//! ```

pub mod baselines;
pub mod compare;
pub mod dist;
pub mod estimation;
pub mod ingest;
pub mod numerics;
pub mod runs;
pub mod simstudy;
pub mod tables;

pub use dist::{DistError, SsludParams, SummaryMeasures};
pub use estimation::{
    fit_mle, fit_mle_default, fit_mom, information_criteria, sslud_loglik, Branch, FitResult,
    Model, ModelParams, Sample,
};
pub use numerics::{Bracket, NumericsError, RngStream};
