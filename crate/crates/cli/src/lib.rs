//! Command-line front end for `hardy-core`.
//!
//! Every subcommand builds an [`OutputRecord`]; the binary renders it as CSV
//! or JSON and maps the verdict onto the exit code (0 pass, 1 failed check,
//! 2 usage error).

pub mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hardy_core::spectral::DEFAULT_EIGEN_TOL;
use hardy_core::verify::{ground_state_residual, ground_state_residual_extended, Tolerances};
use hardy_core::weight::{improved_weight_extended, Scaled};
use hardy_core::{
    improved_weight_closed, improved_weight_series, min_generalized_eigenvalue, run_verification,
    series_coefficient, ClassicalWeight, GroundState, HardyError, ImprovedWeight,
    TruncatedOperatorPair, VerificationConfig, WeightFunction,
};

pub use output::{Format, OutputRecord, Payload, SCHEMA};
use output::{CoeffRow, EigenPayload, EigenRow, ResidualPayload, WeightRow};

/// Allowed shortfall of `lambda_min` below 1 before the eigen scan flags it.
pub const EIGEN_FLOOR_TOL: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] HardyError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Sharpened Hardy weights on the half-line: tables, checks and spectral scans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form, series and classical weights for n = 1..n-max.
    Weights(WeightsArgs),
    /// Exact series coefficients c_1..c_k-max.
    Coeffs(CoeffsArgs),
    /// Run the verification battery.
    Verify(VerifyArgs),
    /// Smallest eigenvalue of the truncated pencil for each N.
    Eigen(EigenArgs),
    /// Ground-state residual max |(Δ - w) √n| / √n over n <= n-max.
    Residual(ResidualArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    /// Series truncation order K.
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: u64,
    /// Add a column evaluated with this many decimal digits.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub precision: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Random sequences in the Hardy-gap suite.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_support: u64,
    /// Random (u, φ) instances in the identity suite.
    #[arg(long, default_value_t = 1_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub identity_trials: u64,
    /// Random increment sequences in the equivalence suite.
    #[arg(long, default_value_t = 1_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub increment_trials: u64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub residual_n: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 10, 100, 1_000, 10_000])]
    pub eigen_sizes: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = [10u64, 100, 1_000, 10_000])]
    pub cutoff_lengths: Vec<u64>,
    /// Tolerance of the gap, identity, equivalence and residual checks.
    #[arg(long, default_value_t = 1e-12, value_parser = positive_real)]
    pub tol: f64,
    /// Digits for the extended-precision cross-checks (off by default).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub precision: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EigenWeight {
    Improved,
    Classical,
    /// `(1 + epsilon)` times the improved weight.
    Inflated(f64),
}

impl std::fmt::Display for EigenWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Improved => f.write_str("improved"),
            Self::Classical => f.write_str("classical"),
            Self::Inflated(eps) => write!(f, "inflated:{eps}"),
        }
    }
}

impl std::str::FromStr for EigenWeight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "improved" => Ok(Self::Improved),
            "classical" => Ok(Self::Classical),
            "inflated" => Ok(Self::Inflated(0.05)),
            _ => {
                let eps = s
                    .strip_prefix("inflated:")
                    .ok_or_else(|| format!("unknown weight {s:?}; use improved, classical or inflated:EPS"))?;
                let eps: f64 = eps.parse().map_err(|e| format!("bad epsilon {eps:?}: {e}"))?;
                if eps > -1.0 && eps.is_finite() {
                    Ok(Self::Inflated(eps))
                } else {
                    Err(format!("epsilon must exceed -1, got {eps}"))
                }
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    /// Comma-separated truncation sizes.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_list: Vec<u64>,
    /// improved, classical, or inflated:EPS.
    #[arg(long, default_value = "improved")]
    pub weight: EigenWeight,
    #[arg(long, default_value_t = DEFAULT_EIGEN_TOL, value_parser = positive_real)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ResidualWeight {
    Improved,
    Classical,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = ResidualWeight::Improved)]
    pub weight: ResidualWeight,
    #[arg(long, default_value_t = 1e-12, value_parser = positive_real)]
    pub tol: f64,
    /// Also evaluate the residual in extended precision with this many digits.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub precision: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a positive finite number, got {s}"))
    }
}

/// A rendered command result and its verdict.
#[derive(Debug)]
pub struct Outcome {
    pub record: OutputRecord,
    /// 0 when every hard check passed, 1 otherwise.
    pub exit_code: i32,
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Self::Weights(a) => &a.output,
            Self::Coeffs(a) => &a.output,
            Self::Verify(a) => &a.output,
            Self::Eigen(a) => &a.output,
            Self::Residual(a) => &a.output,
        }
    }

    pub fn run(&self) -> Result<Outcome, CliError> {
        match self {
            Self::Weights(a) => cmd_weights(a),
            Self::Coeffs(a) => cmd_coeffs(a),
            Self::Verify(a) => cmd_verify(a),
            Self::Eigen(a) => cmd_eigen(a),
            Self::Residual(a) => cmd_residual(a),
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn record(command: String, tolerances: BTreeMap<String, f64>, seed: Option<u64>, payload: Payload) -> OutputRecord {
    OutputRecord {
        schema: SCHEMA.to_string(),
        command,
        tolerances,
        seed,
        payload,
    }
}

pub fn cmd_weights(args: &WeightsArgs) -> Result<Outcome, CliError> {
    let mut rows = Vec::with_capacity(args.n_max as usize);
    for n in 1..=args.n_max {
        let w_closed = improved_weight_closed(n)?;
        let w_series = if n >= 2 {
            Some(improved_weight_series(n, args.k_max)?)
        } else {
            None
        };
        let w_classical = ClassicalWeight.value(n);
        let (w_extended, extended_rel_err) = match args.precision {
            Some(digits) => {
                let ext = improved_weight_extended(n, digits)?;
                let rel = (w_closed / ext.to_f64() - 1.0).abs();
                (Some(ext.to_scientific(digits)), Some(rel))
            }
            None => (None, None),
        };
        rows.push(WeightRow {
            n,
            w_closed,
            w_series,
            w_classical,
            ratio: w_closed / w_classical,
            w_extended,
            extended_rel_err,
        });
    }
    let mut command = format!("weights --n-max {} --k-max {}", args.n_max, args.k_max);
    if let Some(d) = args.precision {
        command.push_str(&format!(" --precision {d}"));
    }
    Ok(Outcome {
        record: record(command, BTreeMap::new(), None, Payload::Weights(rows)),
        exit_code: 0,
    })
}

pub fn cmd_coeffs(args: &CoeffsArgs) -> Result<Outcome, CliError> {
    let rows = (1..=args.k_max)
        .map(|k| {
            let c = series_coefficient(k)?;
            Ok(CoeffRow {
                k,
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
                rational: c.to_string(),
                value: c.to_f64(),
            })
        })
        .collect::<Result<Vec<_>, HardyError>>()?;
    Ok(Outcome {
        record: record(
            format!("coeffs --k-max {}", args.k_max),
            BTreeMap::new(),
            None,
            Payload::Coeffs(rows),
        ),
        exit_code: 0,
    })
}

impl VerifyArgs {
    pub fn config(&self) -> VerificationConfig {
        VerificationConfig {
            seed: self.seed,
            gap_trials: self.trials,
            identity_trials: self.identity_trials,
            increment_trials: self.increment_trials,
            max_support: self.max_support,
            cutoff_lengths: self.cutoff_lengths.clone(),
            residual_n: self.residual_n,
            eigen_sizes: self.eigen_sizes.clone(),
            extended_digits: self.precision,
            tolerances: Tolerances {
                gap: self.tol,
                identity: self.tol,
                equivalence: self.tol,
                residual: self.tol,
                ..Tolerances::default()
            },
            ..VerificationConfig::default()
        }
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let config = args.config();
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let report = run_verification(&config)?;
    let t = &config.tolerances;
    let tolerances = BTreeMap::from([
        ("gap".to_string(), t.gap),
        ("identity".to_string(), t.identity),
        ("equivalence".to_string(), t.equivalence),
        ("residual".to_string(), t.residual),
        ("eigen".to_string(), t.eigen),
        ("eigen_floor".to_string(), t.eigen_floor),
        ("extended".to_string(), t.extended),
    ]);
    let mut command = format!(
        "verify --trials {} --seed {} --max-support {} --identity-trials {} --increment-trials {} \
         --residual-n {} --eigen-sizes {} --cutoff-lengths {} --tol {:e}",
        args.trials,
        args.seed,
        args.max_support,
        args.identity_trials,
        args.increment_trials,
        args.residual_n,
        join(&args.eigen_sizes),
        join(&args.cutoff_lengths),
        args.tol,
    );
    if let Some(d) = args.precision {
        command.push_str(&format!(" --precision {d}"));
    }
    let exit_code = if report.passed { 0 } else { 1 };
    Ok(Outcome {
        record: record(command, tolerances, Some(config.seed), Payload::Verify(Box::new(report))),
        exit_code,
    })
}

pub fn cmd_eigen(args: &EigenArgs) -> Result<Outcome, CliError> {
    let mut sizes = args.n_list.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let mut rows: Vec<EigenRow> = Vec::with_capacity(sizes.len());
    for &size in &sizes {
        let pair = match args.weight {
            EigenWeight::Improved => TruncatedOperatorPair::from_weight(&ImprovedWeight, size)?,
            EigenWeight::Classical => TruncatedOperatorPair::from_weight(&ClassicalWeight, size)?,
            EigenWeight::Inflated(eps) => TruncatedOperatorPair::from_weight(
                &Scaled {
                    factor: 1.0 + eps,
                    inner: ImprovedWeight,
                },
                size,
            )?,
        };
        let lambda_min = min_generalized_eigenvalue(&pair, args.tol)?;
        let monotonicity_violation = rows
            .last()
            .is_some_and(|prev| lambda_min > prev.lambda_min + args.tol);
        rows.push(EigenRow {
            size,
            lambda_min,
            monotonicity_violation,
            below_one: lambda_min < 1.0 - EIGEN_FLOOR_TOL,
        });
    }
    let flags_are_hard = args.weight == EigenWeight::Improved;
    let clean = rows.iter().all(|r| !r.monotonicity_violation && !r.below_one);
    let passed = !flags_are_hard || clean;
    let payload = EigenPayload {
        weight: args.weight.to_string(),
        rows,
        flags_are_hard,
        passed,
    };
    let tolerances = BTreeMap::from([
        ("eigen".to_string(), args.tol),
        ("eigen_floor".to_string(), EIGEN_FLOOR_TOL),
    ]);
    let command = format!(
        "eigen --n-list {} --weight {} --tol {:e}",
        join(&sizes),
        args.weight,
        args.tol
    );
    Ok(Outcome {
        record: record(command, tolerances, None, Payload::Eigen(payload)),
        exit_code: if passed { 0 } else { 1 },
    })
}

pub fn cmd_residual(args: &ResidualArgs) -> Result<Outcome, CliError> {
    let (weight, max_residual) = match args.weight {
        ResidualWeight::Improved => (
            "improved",
            ground_state_residual(&GroundState, &ImprovedWeight, args.n_max)?,
        ),
        ResidualWeight::Classical => (
            "classical",
            ground_state_residual(&GroundState, &ClassicalWeight, args.n_max)?,
        ),
    };
    let extended_residual = match (args.weight, args.precision) {
        (ResidualWeight::Improved, Some(digits)) => Some(ground_state_residual_extended(args.n_max, digits)?),
        _ => None,
    };
    let passed = (args.weight == ResidualWeight::Improved).then(|| {
        max_residual <= args.tol && extended_residual.into_iter().all(|r| r <= args.tol)
    });
    let mut command = format!("residual --n-max {} --weight {weight} --tol {:e}", args.n_max, args.tol);
    if let Some(d) = args.precision {
        command.push_str(&format!(" --precision {d}"));
    }
    let payload = ResidualPayload {
        weight: weight.to_string(),
        n_max: args.n_max,
        max_residual,
        extended_residual,
        passed,
    };
    Ok(Outcome {
        record: record(
            command,
            BTreeMap::from([("residual".to_string(), args.tol)]),
            None,
            Payload::Residual(payload),
        ),
        exit_code: if passed == Some(false) { 1 } else { 0 },
    })
}
