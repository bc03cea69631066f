//! Command-line surface for the SSLUD library: data ingestion, model
//! comparison, the runs test, simulation studies, and machine-readable
//! emission of every reference table and figure as delimited text.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sslud::compare::{emit_density_overlay, fit_compare, ModelComparison};
use sslud::dist::SsludParams;
use sslud::estimation::{FitResult, ModelParams, Sample};
use sslud::ingest::{load_sample, InputKind};
use sslud::numerics::RngStream;
use sslud::runs::{descriptives, runs_test};
use sslud::simstudy::{run_cell, run_grid, sampling_density, GridSpec, SimCell};
use sslud::tables::{entropy_curve, fmt7, measures_curve, median_table, write_table, Delim};

#[derive(Parser)]
#[command(
    name = "sslud",
    version,
    about = "Skew-symmetric-Laplace-uniform distribution: fitting, simulation, and reference tables",
    long_about = "Fits SSLUD(mu) and its comparison models to return series, runs \
                  reproducible Monte Carlo estimator studies, and emits every reference \
                  table and curve as delimited text that any plotting tool can render."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output field delimiter
    #[arg(long, global = true, value_enum, default_value_t = DelimArg::Tab)]
    delim: DelimArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum DelimArg {
    Tab,
    Comma,
}

impl From<DelimArg> for Delim {
    fn from(d: DelimArg) -> Self {
        match d {
            DelimArg::Tab => Delim::Tab,
            DelimArg::Comma => Delim::Comma,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Raw prices; percentage changes are computed
    Prices,
    /// Precomputed returns, used directly
    Returns,
}

impl From<KindArg> for InputKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Prices => InputKind::Prices,
            KindArg::Returns => InputKind::Returns,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Fit SSLUD, skew-Laplace, Laplace, and Normal to a series and rank by AIC/BIC
    FitCompare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Returns)]
        kind: KindArg,
        /// Constant subtracted from every return before fitting
        #[arg(long, default_value_t = 0.0)]
        shift: f64,
    },
    /// Observed histogram and fitted densities on a uniform grid
    DensityOverlay {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Returns)]
        kind: KindArg,
        #[arg(long, default_value_t = 0.0)]
        shift: f64,
        /// Number of grid points
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Bias and MSE of the MLE and moment estimator for one (mu, n) cell
    Simulate {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reps: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Run a full (mu, n) grid from a TOML spec file
    SimGrid {
        /// TOML file with `mus = [...]`, `ns = [...]`, `reps = N`
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Run cells serially instead of across threads (same result bitwise)
        #[arg(long)]
        serial: bool,
    },
    /// Binned empirical density of the estimators across replicates
    SamplingDensity {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reps: usize,
        #[arg(long)]
        seed: u64,
        /// Histogram bins (0 = Sturges' rule)
        #[arg(long, default_value_t = 0)]
        bins: usize,
    },
    /// Medians of SSLUD(mu) for mu = 0.25, 0.5, ..., 1.5
    MedianTable,
    /// Mean, variance, skewness, kurtosis over mu in [-10, 10]
    MeasuresCurve,
    /// Shannon entropy over mu in (0, 30]
    EntropyCurve,
    /// Wald-Wolfowitz runs test and descriptive statistics of a return series
    RunsTest {
        #[arg(long)]
        input: PathBuf,
    },
    /// Draw a reproducible sample from SSLUD(mu)
    Sample {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Failures mapped to exit codes: input problems exit 2, model/computation
/// problems exit 1.
enum CliError {
    Input(String),
    Model(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Model(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Model(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let delim = cli.delim.into();
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error\tcannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout())),
    };
    match run(cli.cmd, delim, &mut out).and_then(|()| {
        out.flush()
            .map_err(|e| CliError::Input(format!("write failed: {e}")))
    }) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error\t{}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn load(input: &Path, kind: KindArg, shift: f64) -> Result<Sample, CliError> {
    load_sample(input, kind.into(), shift)
        .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))
}

fn param_fields(fit: &FitResult) -> (String, String, String, String) {
    match fit.params {
        ModelParams::Sslud(p) => ("mu".into(), fmt7(p.mu()), String::new(), String::new()),
        ModelParams::SkewLaplace(p) => {
            ("lambda".into(), fmt7(p.lambda), String::new(), String::new())
        }
        ModelParams::Laplace(p) => {
            ("theta".into(), fmt7(p.theta), "beta".into(), fmt7(p.beta))
        }
        ModelParams::Normal(p) => {
            ("theta".into(), fmt7(p.theta), "sigma2".into(), fmt7(p.sigma2))
        }
    }
}

fn comparison_rows(cmp: &ModelComparison) -> Vec<Vec<String>> {
    cmp.fits
        .iter()
        .map(|fit| {
            let (p1n, p1v, p2n, p2v) = param_fields(fit);
            vec![
                fit.model.name().to_string(),
                fit.k.to_string(),
                p1n,
                p1v,
                p2n,
                p2v,
                fmt7(fit.loglik),
                fmt7(fit.aic),
                fmt7(fit.bic),
                fit.branch.name().to_string(),
                fit.boundary_hit.to_string(),
                (cmp.best_aic == fit.model).to_string(),
                (cmp.best_bic == fit.model).to_string(),
            ]
        })
        .collect()
}

fn cell_row(cell: &SimCell) -> Vec<String> {
    vec![
        fmt7(cell.mu),
        cell.n.to_string(),
        cell.reps.to_string(),
        cell.seed.to_string(),
        cell.stream_id.to_string(),
        fmt7(cell.mle_bias),
        fmt7(cell.mle_mse),
        fmt7(cell.mom_bias),
        fmt7(cell.mom_mse),
        fmt7(cell.mle_bias_se),
        fmt7(cell.mle_mse_se),
        fmt7(cell.mom_bias_se),
        fmt7(cell.mom_mse_se),
    ]
}

const CELL_HEADER: [&str; 13] = [
    "mu",
    "n",
    "reps",
    "seed",
    "stream_id",
    "mle_bias",
    "mle_mse",
    "mom_bias",
    "mom_mse",
    "mle_bias_se",
    "mle_mse_se",
    "mom_bias_se",
    "mom_mse_se",
];

fn run(cmd: Cmd, delim: Delim, out: &mut dyn Write) -> Result<(), CliError> {
    let werr = |e: io::Error| CliError::Input(format!("write failed: {e}"));
    match cmd {
        Cmd::FitCompare { input, kind, shift } => {
            let data = load(&input, kind, shift)?;
            let cmp = fit_compare(&data).map_err(|e| CliError::Model(e.to_string()))?;
            for (model, msg) in &cmp.errors {
                eprintln!("warning\t{} failed to fit: {msg}", model.name());
            }
            write_table(
                out,
                &[
                    "model", "k", "param1", "value1", "param2", "value2", "loglik", "aic",
                    "bic", "branch", "boundary_hit", "best_aic", "best_bic",
                ],
                comparison_rows(&cmp),
                delim,
            )
            .map_err(werr)?;
            if !cmp.errors.is_empty() {
                return Err(CliError::Model(format!(
                    "{} model(s) failed to fit",
                    cmp.errors.len()
                )));
            }
            Ok(())
        }
        Cmd::DensityOverlay { input, kind, shift, grid } => {
            if grid < 16 {
                return Err(CliError::Input("--grid must be at least 16".into()));
            }
            let data = load(&input, kind, shift)?;
            let cmp = fit_compare(&data).map_err(|e| CliError::Model(e.to_string()))?;
            let overlay = emit_density_overlay(&data, &cmp, grid);
            let opt = |v: Option<f64>| v.map(fmt7).unwrap_or_default();
            write_table(
                out,
                &["x", "histogram", "sslud", "skew_laplace", "laplace", "normal"],
                overlay.rows.iter().map(|r| {
                    vec![
                        fmt7(r.x),
                        fmt7(r.histogram),
                        opt(r.sslud),
                        opt(r.skew_laplace),
                        opt(r.laplace),
                        opt(r.normal),
                    ]
                }),
                delim,
            )
            .map_err(werr)
        }
        Cmd::Simulate { mu, n, reps, seed } => {
            let cell = run_cell(mu, n, reps, RngStream::new(seed, 0))
                .map_err(|e| CliError::Model(e.to_string()))?;
            write_table(out, &CELL_HEADER, [cell_row(&cell)], delim).map_err(werr)
        }
        Cmd::SimGrid { spec, seed, serial } => {
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| CliError::Input(format!("{}: {e}", spec.display())))?;
            let grid_spec: GridSpec = toml::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", spec.display())))?;
            let grid = run_grid(&grid_spec, seed, !serial)
                .map_err(|e| CliError::Model(e.to_string()))?;
            write_table(out, &CELL_HEADER, grid.cells.iter().map(cell_row), delim)
                .map_err(werr)
        }
        Cmd::SamplingDensity { mu, n, reps, seed, bins } => {
            let d = sampling_density(mu, n, reps, RngStream::new(seed, 0), bins)
                .map_err(|e| CliError::Model(e.to_string()))?;
            let mut rows = Vec::new();
            for (name, est) in [("mle", &d.mle), ("mom", &d.mom)] {
                for bin in &est.bins {
                    rows.push(vec![
                        name.to_string(),
                        fmt7(bin.lo),
                        fmt7(bin.hi),
                        fmt7(bin.density),
                        fmt7(est.skewness),
                        fmt7(est.excess_kurtosis),
                    ]);
                }
            }
            write_table(
                out,
                &["estimator", "bin_lo", "bin_hi", "density", "skewness", "excess_kurtosis"],
                rows,
                delim,
            )
            .map_err(werr)
        }
        Cmd::MedianTable => write_table(
            out,
            &["mu", "median"],
            median_table().iter().map(|(m, v)| vec![fmt7(*m), fmt7(*v)]),
            delim,
        )
        .map_err(werr),
        Cmd::MeasuresCurve => write_table(
            out,
            &["mu", "mean", "variance", "skewness", "kurtosis"],
            measures_curve().iter().map(|r| {
                vec![
                    fmt7(r.mu),
                    fmt7(r.mean),
                    fmt7(r.variance),
                    fmt7(r.skewness),
                    fmt7(r.kurtosis),
                ]
            }),
            delim,
        )
        .map_err(werr),
        Cmd::EntropyCurve => write_table(
            out,
            &["mu", "shannon_entropy"],
            entropy_curve().iter().map(|(m, h)| vec![fmt7(*m), fmt7(*h)]),
            delim,
        )
        .map_err(werr),
        Cmd::RunsTest { input } => {
            let data = load(&input, KindArg::Returns, 0.0)?;
            let t = runs_test(&data).map_err(|e| CliError::Model(e.to_string()))?;
            let d = descriptives(&data);
            write_table(
                out,
                &["statistic", "value"],
                [
                    vec!["n".to_string(), data.n().to_string()],
                    vec!["mean".to_string(), fmt7(d.mean)],
                    vec!["variance".to_string(), fmt7(d.variance)],
                    vec!["skewness".to_string(), fmt7(d.skewness)],
                    vec!["runs".to_string(), t.runs.to_string()],
                    vec!["n_above".to_string(), t.n_above.to_string()],
                    vec!["n_below".to_string(), t.n_below.to_string()],
                    vec!["z".to_string(), fmt7(t.z)],
                    vec!["p_value".to_string(), fmt7(t.p_value)],
                ],
                delim,
            )
            .map_err(werr)
        }
        Cmd::Sample { mu, n, seed } => {
            let params =
                SsludParams::new(mu).map_err(|e| CliError::Input(e.to_string()))?;
            if n == 0 {
                return Err(CliError::Input("--n must be at least 1".into()));
            }
            let draws = params.sample(n, RngStream::new(seed, 0));
            write_table(
                out,
                &["x"],
                draws.iter().map(|x| vec![fmt7(*x)]),
                delim,
            )
            .map_err(werr)
        }
    }
}
