//! Monte Carlo study of the moment and maximum likelihood estimators:
//! per-cell bias and MSE with replicate-based standard errors, grids over
//! (mu, n), and sampling-density summaries of the estimator distributions.
//!
//! Reproducibility contract: a cell is fully determined by
//! (mu, n, reps, seed, stream id), and grid cells draw from streams keyed by
//! their (row, column) position, so extending a grid never perturbs existing
//! cells and parallel execution equals serial execution bitwise.

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::dist::{DistError, SsludParams};
use crate::estimation::{fit_mle_default, fit_mom, EstimationError, Sample};
use crate::numerics::RngStream;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid cell: {0}")]
    InvalidCell(String),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error("replicate fit failed in cell (mu={mu}, n={n}): {source}")]
    Fit {
        mu: f64,
        n: usize,
        source: EstimationError,
    },
}

/// One (mu, n) cell of the bias/MSE study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimCell {
    pub mu: f64,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub stream_id: u64,
    pub mle_bias: f64,
    pub mle_mse: f64,
    pub mom_bias: f64,
    pub mom_mse: f64,
    /// Replicate-based standard errors of the four statistics above.
    pub mle_bias_se: f64,
    pub mle_mse_se: f64,
    pub mom_bias_se: f64,
    pub mom_mse_se: f64,
}

/// Grid specification: the cross product of `mus` and `ns` at `reps`
/// replicates per cell.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct GridSpec {
    pub mus: Vec<f64>,
    pub ns: Vec<usize>,
    pub reps: usize,
}

/// A completed grid: `cells[row * ns.len() + col]` holds (mus[row], ns[col]).
#[derive(Debug, Clone, PartialEq)]
pub struct SimGrid {
    pub mus: Vec<f64>,
    pub ns: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub cells: Vec<SimCell>,
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Run one cell: `reps` samples of size `n` from SSLUD(mu), each fitted by
/// maximum likelihood and by the method of moments.
///
/// Any replicate fit error aborts the whole cell; replicates are never
/// silently dropped.
pub fn run_cell(mu: f64, n: usize, reps: usize, stream: RngStream) -> Result<SimCell, SimError> {
    if n < 2 || reps < 1 {
        return Err(SimError::InvalidCell(format!(
            "need n >= 2 and reps >= 1, got n={n}, reps={reps}"
        )));
    }
    let params = SsludParams::new(mu)?;
    let mut rng = stream.rng();
    let mut mle_err = Vec::with_capacity(reps);
    let mut mle_sq = Vec::with_capacity(reps);
    let mut mom_err = Vec::with_capacity(reps);
    let mut mom_sq = Vec::with_capacity(reps);
    for _ in 0..reps {
        let draws = params.sample_with(n, &mut rng);
        let data = Sample::new(draws).expect("sampler yields finite values");
        let mle = fit_mle_default(&data).map_err(|source| SimError::Fit { mu, n, source })?;
        let e1 = mle.sslud_mu().expect("sslud fit") - mu;
        mle_err.push(e1);
        mle_sq.push(e1 * e1);
        let mom = fit_mom(&data);
        let e2 = mom.sslud_mu().expect("sslud fit") - mu;
        mom_err.push(e2);
        mom_sq.push(e2 * e2);
    }
    let (mle_bias, mle_bias_se) = mean_and_se(&mle_err);
    let (mle_mse, mle_mse_se) = mean_and_se(&mle_sq);
    let (mom_bias, mom_bias_se) = mean_and_se(&mom_err);
    let (mom_mse, mom_mse_se) = mean_and_se(&mom_sq);
    Ok(SimCell {
        mu,
        n,
        reps,
        seed: stream.seed(),
        stream_id: stream.stream_id(),
        mle_bias,
        mle_mse,
        mom_bias,
        mom_mse,
        mle_bias_se,
        mle_mse_se,
        mom_bias_se,
        mom_mse_se,
    })
}

/// Stream id for the cell at (row, col): rows in the high half, columns in
/// the low half, so grids extend without disturbing existing cells.
pub fn cell_stream_id(row: usize, col: usize) -> u64 {
    ((row as u64) << 32) | col as u64
}

/// Run every cell of the grid, optionally fanning out across a thread pool.
/// The result is bitwise identical either way.
pub fn run_grid(spec: &GridSpec, seed: u64, parallel: bool) -> Result<SimGrid, SimError> {
    let coords: Vec<(usize, usize)> = (0..spec.mus.len())
        .flat_map(|r| (0..spec.ns.len()).map(move |c| (r, c)))
        .collect();
    let run = |&(r, c): &(usize, usize)| {
        run_cell(
            spec.mus[r],
            spec.ns[c],
            spec.reps,
            RngStream::new(seed, cell_stream_id(r, c)),
        )
    };
    let cells: Result<Vec<SimCell>, SimError> = if parallel {
        coords.par_iter().map(run).collect()
    } else {
        coords.iter().map(run).collect()
    };
    Ok(SimGrid {
        mus: spec.mus.clone(),
        ns: spec.ns.clone(),
        reps: spec.reps,
        seed,
        cells: cells?,
    })
}

/// One histogram bin: density over `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistBin {
    pub lo: f64,
    pub hi: f64,
    pub density: f64,
}

/// Binned empirical density of one estimator's replicates, with moment-based
/// normality diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorDensity {
    pub bins: Vec<HistBin>,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

impl EstimatorDensity {
    /// Distance from normality: `skew^2 + exkurt^2 / 4` (the Jarque-Bera
    /// statistic up to its n/6 factor). Zero for exactly normal moments.
    pub fn normality_score(&self) -> f64 {
        self.skewness * self.skewness + self.excess_kurtosis * self.excess_kurtosis / 4.0
    }
}

/// Sampling densities of both estimators over `reps` replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingDensity {
    pub mu: f64,
    pub n: usize,
    pub reps: usize,
    pub mle: EstimatorDensity,
    pub mom: EstimatorDensity,
}

fn histogram(values: &[f64], bins: usize) -> Vec<HistBin> {
    let n = values.len();
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return vec![HistBin { lo: lo - 0.5, hi: lo + 0.5, density: 1.0 }];
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in values {
        let i = (((v - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistBin {
            lo: lo + width * i as f64,
            hi: lo + width * (i + 1) as f64,
            density: c as f64 / (n as f64 * width),
        })
        .collect()
}

fn estimator_density(values: &[f64], bins: usize) -> EstimatorDensity {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let m2 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    let m4 = values.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
    let (skewness, excess_kurtosis) = if m2 > 0.0 {
        (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
    } else {
        (0.0, 0.0)
    };
    EstimatorDensity { bins: histogram(values, bins), skewness, excess_kurtosis }
}

/// Sturges' bin count.
pub fn sturges_bins(n: usize) -> usize {
    ((n as f64).log2().ceil() as usize + 1).max(1)
}

/// Replicate both estimators and bin their empirical densities.
/// `bins = 0` selects Sturges' rule.
pub fn sampling_density(
    mu: f64,
    n: usize,
    reps: usize,
    stream: RngStream,
    bins: usize,
) -> Result<SamplingDensity, SimError> {
    if reps < 100 {
        return Err(SimError::InvalidCell(format!(
            "sampling density needs reps >= 100, got {reps}"
        )));
    }
    let params = SsludParams::new(mu)?;
    let mut rng = stream.rng();
    let mut mle_vals = Vec::with_capacity(reps);
    let mut mom_vals = Vec::with_capacity(reps);
    for _ in 0..reps {
        let data = Sample::new(params.sample_with(n, &mut rng)).expect("finite draws");
        let mle = fit_mle_default(&data).map_err(|source| SimError::Fit { mu, n, source })?;
        mle_vals.push(mle.sslud_mu().expect("sslud fit"));
        mom_vals.push(fit_mom(&data).sslud_mu().expect("sslud fit"));
    }
    let bins = if bins == 0 { sturges_bins(reps) } else { bins };
    Ok(SamplingDensity {
        mu,
        n,
        reps,
        mle: estimator_density(&mle_vals, bins),
        mom: estimator_density(&mom_vals, bins),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_replicate_mse_is_bias_squared() {
        let cell = run_cell(0.75, 50, 1, RngStream::new(3, 0)).unwrap();
        assert!((cell.mle_mse - cell.mle_bias * cell.mle_bias).abs() < 1e-15);
        assert!((cell.mom_mse - cell.mom_bias * cell.mom_bias).abs() < 1e-15);
    }

    #[test]
    fn bias_squared_below_mse() {
        let cell = run_cell(0.5, 60, 40, RngStream::new(9, 1)).unwrap();
        assert!(cell.mle_bias * cell.mle_bias <= cell.mle_mse + 1e-12);
        assert!(cell.mom_bias * cell.mom_bias <= cell.mom_mse + 1e-12);
    }

    #[test]
    fn cell_reproducible() {
        let a = run_cell(-0.75, 40, 20, RngStream::new(123, 5)).unwrap();
        let b = run_cell(-0.75, 40, 20, RngStream::new(123, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_cell_grid() {
        let spec = GridSpec { mus: vec![0.75], ns: vec![30], reps: 1 };
        let grid = run_grid(&spec, 77, false).unwrap();
        assert_eq!(grid.cells.len(), 1);
        let direct = run_cell(0.75, 30, 1, RngStream::new(77, cell_stream_id(0, 0))).unwrap();
        assert_eq!(grid.cells[0], direct);
    }

    #[test]
    fn grid_serial_equals_parallel() {
        let spec = GridSpec { mus: vec![0.25, -1.5], ns: vec![30, 60], reps: 10 };
        let serial = run_grid(&spec, 2024, false).unwrap();
        let parallel = run_grid(&spec, 2024, true).unwrap();
        assert_eq!(serial, parallel);
        let again = run_grid(&spec, 2024, true).unwrap();
        assert_eq!(parallel, again);
    }

    #[test]
    fn grid_row_extension_preserves_cells() {
        let small = GridSpec { mus: vec![0.75], ns: vec![25, 50], reps: 5 };
        let big = GridSpec { mus: vec![0.75, -0.25], ns: vec![25, 50], reps: 5 };
        let a = run_grid(&small, 11, false).unwrap();
        let b = run_grid(&big, 11, false).unwrap();
        assert_eq!(a.cells[..2], b.cells[..2]);
    }

    #[test]
    fn histogram_mass_sums_to_one() {
        let d = sampling_density(0.75, 40, 200, RngStream::new(8, 2), 0).unwrap();
        for est in [&d.mle, &d.mom] {
            let mass: f64 = est.bins.iter().map(|b| b.density * (b.hi - b.lo)).sum();
            assert!((mass - 1.0).abs() < 1e-12, "mass={mass}");
        }
    }

    #[test]
    fn rejects_tiny_runs() {
        assert!(run_cell(0.5, 1, 10, RngStream::new(0, 0)).is_err());
        assert!(run_cell(0.5, 10, 0, RngStream::new(0, 0)).is_err());
        assert!(sampling_density(0.5, 10, 5, RngStream::new(0, 0), 0).is_err());
    }
}
