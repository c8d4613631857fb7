//! Numerical verification of the improved Hardy inequality.
//!
//! [`run_verification`] executes a seeded battery of checks and condenses
//! the outcome into a [`VerificationReport`]. Trials are independent: each
//! derives its generator from `(master seed, battery, trial index)`, and
//! results are reduced in index order, so the report does not depend on how
//! the trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HardyError, Result};
use crate::operator::{
    apply_dirichlet_laplacian, apply_weighted_laplacian, energy, gst_defect, inner,
    multiply_by_weight, unitarity_defect, weighted_form, weighted_inner,
};
use crate::precise::{decimal_len, Fixed};
use crate::sequence::CompactSequence;
use crate::spectral::{min_generalized_eigenvalue, TruncatedOperatorPair};
use crate::weight::{
    improved_weight_closed, improved_weight_extended, ClassicalWeight, GroundState,
    ImprovedWeight, PotentialOf, Scaled, Squared, TabulatedWeight, WeightFunction,
};

/// `energy(phi) - sum_{n >= 1} w(n) phi(n)^2`.
pub fn hardy_gap<W: WeightFunction + ?Sized>(phi: &CompactSequence, w: &W) -> f64 {
    let potential: f64 = phi
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| w.value(i as u64 + 1) * v * v)
        .sum();
    energy(phi) - potential
}

/// Builds `phi(n) = a(1) + ... + a(n)` on `1..=N` and returns the classical
/// Hardy gap restricted to that window:
/// `sum_{n<=N} (phi(n) - phi(n-1))^2 - sum_{n<=N} phi(n)^2 / (4n^2)`,
/// which equals `sum a_n^2 - sum ((a_1 + ... + a_n) / (2n))^2`.
pub fn classical_gap_from_increments(a: &CompactSequence) -> Result<f64> {
    check_increments(a)?;
    let mut running = 0.0;
    let phi = a.map(|_, v| {
        running += v;
        running
    });
    // the window energy omits the cutoff edge N -> N + 1
    let window_energy: f64 = (1..=phi.support())
        .map(|n| {
            let d = phi.get(n) - phi.get(n - 1);
            d * d
        })
        .sum();
    let potential = weighted_inner(&phi, &phi, &ClassicalWeight);
    Ok(window_energy - potential)
}

/// `sum a_n^2 - sum ((a_1 + ... + a_n) / (2n))^2`, summed directly from the
/// increments.
pub fn classical_gap_direct(a: &CompactSequence) -> Result<f64> {
    check_increments(a)?;
    let mut squares = 0.0;
    let mut averages = 0.0;
    let mut partial = 0.0;
    for (i, &v) in a.values().iter().enumerate() {
        partial += v;
        squares += v * v;
        let mean = partial / (2.0 * (i + 1) as f64);
        averages += mean * mean;
    }
    Ok(squares - averages)
}

fn check_increments(a: &CompactSequence) -> Result<()> {
    match a.values().iter().position(|&v| !(v >= 0.0)) {
        Some(i) => Err(HardyError::NegativeIncrement {
            index: i as u64 + 1,
            value: a.values()[i],
        }),
        None => Ok(()),
    }
}

/// `max_{1<=n<=N} |(Δu)(n) - w(n) u(n)| / u(n)` with the plain stencil
/// `(Δu)(n) = 2u(n) - u(n-1) - u(n+1)` and `u(0) = 0`.
pub fn ground_state_residual<U, W>(u: &U, w: &W, n_max: u64) -> Result<f64>
where
    U: WeightFunction + ?Sized,
    W: WeightFunction + ?Sized,
{
    if n_max == 0 {
        return Err(HardyError::Domain {
            what: "ground_state_residual",
            index: 0,
            requirement: "N >= 1",
        });
    }
    Ok((1..=n_max)
        .map(|n| {
            let un = u.at(n);
            let stencil = 2.0 * un - u.at(n - 1) - u.at(n + 1);
            (stencil - w.value(n) * un).abs() / un
        })
        .fold(0.0, f64::max))
}

/// The ground-state residual of `u = sqrt` against the improved weight,
/// evaluated entirely in decimal fixed point with `digits` digits.
pub fn ground_state_residual_extended(n_max: u64, digits: u32) -> Result<f64> {
    if n_max == 0 {
        return Err(HardyError::Domain {
            what: "ground_state_residual_extended",
            index: 0,
            requirement: "N >= 1",
        });
    }
    let scale = digits + 2 * decimal_len(n_max) + 10;
    let root = |n: u64| Fixed::from_integer(n, scale).sqrt();
    let mut worst = Fixed::zero(scale);
    for n in 1..=n_max {
        let centre = root(n);
        let stencil = &(&(&centre + &centre) - &root(n - 1)) - &root(n + 1);
        let w = improved_weight_extended(n, digits)?.rescale(scale);
        let residual = (&stencil - &(&w * &centre)).abs().div(&centre);
        if residual > worst {
            worst = residual;
        }
    }
    Ok(worst.to_f64())
}

/// Seeded random sequence: support bound uniform in `1..=max_support`,
/// values i.i.d. uniform in `[-amplitude, amplitude]`.
pub fn random_test_sequence(seed: u64, max_support: u64, amplitude: f64) -> CompactSequence {
    assert!(max_support >= 1, "max_support must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = rng.gen_range(1..=max_support);
    CompactSequence::from_fn(support, |_| rng.gen_range(-amplitude..=amplitude))
}

fn random_increments(seed: u64, max_support: u64, amplitude: f64) -> CompactSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = rng.gen_range(1..=max_support);
    CompactSequence::from_fn(support, |_| rng.gen_range(0.0..=amplitude))
}

/// Random positive weight, uniform in `[0.5, 2]` on `1..=len`, tail 1.
fn random_positive_weight(seed: u64, len: u64) -> TabulatedWeight {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TabulatedWeight::new((0..len).map(|_| rng.gen_range(0.5..=2.0)).collect(), 1.0)
}

/// `phi(n) = sqrt(n) (1 - n / length)` for `n < length`: the ground state
/// under a linear cutoff. Drives the relative Hardy gap towards zero as
/// `length` grows.
pub fn cutoff_ground_state(length: u64) -> CompactSequence {
    let support = length.saturating_sub(1);
    CompactSequence::from_fn(support, |n| {
        (n as f64).sqrt() * (1.0 - n as f64 / length as f64)
    })
}

/// Hardy gap of [`cutoff_ground_state`] against the improved weight, in
/// decimal fixed point.
pub fn cutoff_gap_extended(length: u64, digits: u32) -> Result<f64> {
    let scale = digits + 2 * decimal_len(length) + 10;
    let phi = |n: u64| {
        if n == 0 || n >= length {
            Fixed::zero(scale)
        } else {
            let root = Fixed::from_integer(n, scale).sqrt();
            &root * &Fixed::from_ratio(length - n, length, scale)
        }
    };
    let mut gap = Fixed::zero(scale);
    let mut previous = Fixed::zero(scale);
    for n in 1..=length {
        let current = phi(n);
        let d = &current - &previous;
        gap = &gap + &(&d * &d);
        if n < length {
            let w = improved_weight_extended(n, digits)?.rescale(scale);
            gap = &gap - &(&w * &(&current * &current));
        }
        previous = current;
    }
    Ok(gap.to_f64())
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed for trial `index` of battery `stream`, a pure function of its inputs.
pub fn trial_seed(master: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(stream)) ^ index)
}

const GAP_STREAM: u64 = 1;
const IDENTITY_STREAM: u64 = 2;
const WEIGHT_STREAM: u64 = 3;
const INCREMENT_STREAM: u64 = 4;

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Tolerances applied by the battery.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed negative Hardy gap, relative to `max(1, energy)`.
    pub gap: f64,
    /// Relative defect allowed in each operator identity.
    pub identity: f64,
    /// Relative disagreement allowed between the two classical-gap routes.
    pub equivalence: f64,
    /// Bound on the ground-state residual.
    pub residual: f64,
    /// Absolute accuracy of the bisection.
    pub eigen: f64,
    /// Allowed shortfall of `lambda_min` below 1.
    pub eigen_floor: f64,
    /// Relative agreement required between double and extended precision.
    pub extended: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gap: 1e-12,
            identity: 1e-12,
            equivalence: 1e-12,
            residual: 1e-12,
            eigen: 1e-10,
            eigen_floor: 1e-10,
            extended: 1e-14,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationConfig {
    pub seed: u64,
    pub gap_trials: u64,
    pub identity_trials: u64,
    pub increment_trials: u64,
    pub max_support: u64,
    pub amplitude: f64,
    /// Lengths of the cutoff ground-state family.
    pub cutoff_lengths: Vec<u64>,
    /// Largest `n` in the ground-state residual.
    pub residual_n: u64,
    /// Truncation sizes of the eigenvalue scan.
    pub eigen_sizes: Vec<u64>,
    /// `epsilon` of the informational inflated weight `(1 + epsilon) w`.
    pub inflation: f64,
    /// Digits of the extended-precision cross-checks; `None` skips them.
    pub extended_digits: Option<u32>,
    pub tolerances: Tolerances,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            gap_trials: 10_000,
            identity_trials: 1_000,
            increment_trials: 1_000,
            max_support: 1_000,
            amplitude: 1.0,
            cutoff_lengths: vec![10, 100, 1_000, 10_000],
            residual_n: 100_000,
            eigen_sizes: vec![1, 10, 100, 1_000, 10_000],
            inflation: 0.05,
            extended_digits: None,
            tolerances: Tolerances::default(),
        }
    }
}

impl VerificationConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(HardyError::Config(msg));
        for (name, count) in [
            ("gap_trials", self.gap_trials),
            ("identity_trials", self.identity_trials),
            ("increment_trials", self.increment_trials),
            ("max_support", self.max_support),
            ("residual_n", self.residual_n),
        ] {
            if count == 0 {
                return fail(format!("{name} must be at least 1"));
            }
        }
        if !(self.amplitude > 0.0 && self.amplitude.is_finite()) {
            return fail(format!("amplitude must be positive, got {}", self.amplitude));
        }
        if self.eigen_sizes.is_empty() || self.eigen_sizes.contains(&0) {
            return fail("eigen_sizes must be non-empty with every N >= 1".into());
        }
        if self.cutoff_lengths.iter().any(|&l| l < 2) {
            return fail("cutoff lengths must be at least 2".into());
        }
        if !(self.inflation > -1.0 && self.inflation.is_finite()) {
            return fail(format!("inflation must exceed -1, got {}", self.inflation));
        }
        if self.extended_digits == Some(0) {
            return fail("extended precision needs at least one digit".into());
        }
        let t = &self.tolerances;
        for (name, tol) in [
            ("gap", t.gap),
            ("identity", t.identity),
            ("equivalence", t.equivalence),
            ("residual", t.residual),
            ("eigen", t.eigen),
            ("eigen_floor", t.eigen_floor),
            ("extended", t.extended),
        ] {
            if !(tol > 0.0 && tol.is_finite()) {
                return fail(format!("{name} tolerance must be positive, got {tol}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    AtLeast,
}

/// One verdict in the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub comparison: Comparison,
    pub threshold: f64,
    pub passed: bool,
    /// Informational checks never fail the report.
    pub hard: bool,
}

impl Check {
    fn new(name: &str, value: f64, comparison: Comparison, threshold: f64, hard: bool) -> Self {
        let passed = match comparison {
            Comparison::AtMost => value <= threshold,
            Comparison::AtLeast => value >= threshold,
        };
        Self {
            name: name.to_string(),
            value,
            comparison,
            threshold,
            passed,
            hard,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportStats {
    pub min: u64,
    pub max: u64,
    pub mean: f64,
    /// Counts over ten equal-width buckets of `1..=max_support`.
    pub histogram: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapSummary {
    pub trials: u64,
    pub support: SupportStats,
    /// `min gap / max(1, energy)` with the improved weight.
    pub min_relative_gap: f64,
    pub min_relative_gap_trial: u64,
    /// `min (gap_classical - gap_improved) / max(1, energy)`.
    pub min_dominance_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffRow {
    pub length: u64,
    pub energy: f64,
    pub gap: f64,
    pub relative_gap: f64,
    pub extended_gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub trials: u64,
    pub green: f64,
    pub ground_state_transform: f64,
    pub unitarity: f64,
    pub energy_operator: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncrementSummary {
    pub trials: u64,
    pub max_disagreement: f64,
    pub min_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub n_max: u64,
    pub improved: f64,
    /// Residual of the classical weight, nonzero by design.
    pub classical: f64,
    pub extended: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenRow {
    pub size: u64,
    pub improved: f64,
    pub inflated: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenScan {
    pub rows: Vec<EigenRow>,
    pub inflation: f64,
    /// Whether `(1 + epsilon) w` pushed `lambda_min` below 1 at some scanned
    /// size. Exploratory only.
    pub inflated_below_one: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: VerificationConfig,
    pub gap: GapSummary,
    pub cutoff: Vec<CutoffRow>,
    pub identities: IdentitySummary,
    pub increments: IncrementSummary,
    pub residual: ResidualSummary,
    pub eigen: EigenScan,
    /// `max |w_double / w_extended - 1|` over `1..=EXTENDED_WEIGHT_RANGE`.
    pub extended_weight_error: Option<f64>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.hard && !c.passed)
    }
}

/// Range of `n` compared against the extended closed form.
pub const EXTENDED_WEIGHT_RANGE: u64 = 2_000;

struct GapTrial {
    support: u64,
    relative_gap: f64,
    dominance: f64,
}

fn gap_trial(config: &VerificationConfig, index: u64) -> GapTrial {
    let seed = trial_seed(config.seed, GAP_STREAM, index);
    let phi = random_test_sequence(seed, config.max_support, config.amplitude);
    let scale = energy(&phi).max(1.0);
    let improved = hardy_gap(&phi, &ImprovedWeight);
    let classical = hardy_gap(&phi, &ClassicalWeight);
    GapTrial {
        support: phi.support(),
        relative_gap: improved / scale,
        dominance: (classical - improved) / scale,
    }
}

struct IdentityTrial {
    green: f64,
    gst: f64,
    unitarity: f64,
    energy_operator: f64,
}

/// Relative defects of the four operator identities for one `(u, phi)`.
/// Even indices use `u = sqrt`, odd ones a random positive weight.
fn identity_trial(config: &VerificationConfig, index: u64) -> IdentityTrial {
    let seed = trial_seed(config.seed, IDENTITY_STREAM, index);
    let phi = random_test_sequence(seed, config.max_support, config.amplitude);
    if index % 2 == 0 {
        identity_defects(&GroundState, &phi)
    } else {
        let u_seed = trial_seed(config.seed, WEIGHT_STREAM, index);
        let u = random_positive_weight(u_seed, phi.support() + 2);
        identity_defects(&u, &phi)
    }
}

fn identity_defects<U: WeightFunction>(u: &U, phi: &CompactSequence) -> IdentityTrial {
    let transformed = apply_weighted_laplacian(u, phi);
    let green_lhs = weighted_inner(&transformed, phi, &Squared(u));
    let green_rhs = weighted_form(u, phi);

    let gst_scale = transformed.max_abs().max(f64::MIN_POSITIVE);
    let gst = gst_defect(u, &PotentialOf(u), phi) / gst_scale;

    let lifted = multiply_by_weight(u, phi);
    let unitarity = unitarity_defect(u, phi) / inner(&lifted, &lifted).max(f64::MIN_POSITIVE);

    let e = energy(phi);
    let operator_side = inner(&apply_dirichlet_laplacian(phi), phi);

    IdentityTrial {
        green: relative(green_lhs, green_rhs),
        gst,
        unitarity,
        energy_operator: relative(e, operator_side),
    }
}

fn increment_trial(config: &VerificationConfig, index: u64) -> Result<(f64, f64)> {
    let seed = trial_seed(config.seed, INCREMENT_STREAM, index);
    let a = random_increments(seed, config.max_support, config.amplitude);
    let via_partial_sums = classical_gap_from_increments(&a)?;
    let direct = classical_gap_direct(&a)?;
    Ok((relative(via_partial_sums, direct), via_partial_sums))
}

fn support_stats(supports: &[u64], max_support: u64) -> SupportStats {
    let mut histogram = vec![0u64; 10];
    for &s in supports {
        let bucket = ((s - 1) * 10 / max_support).min(9) as usize;
        histogram[bucket] += 1;
    }
    SupportStats {
        min: supports.iter().copied().min().unwrap_or(0),
        max: supports.iter().copied().max().unwrap_or(0),
        mean: supports.iter().sum::<u64>() as f64 / supports.len().max(1) as f64,
        histogram,
    }
}

/// Runs the configured battery and aggregates the verdicts.
pub fn run_verification(config: &VerificationConfig) -> Result<VerificationReport> {
    config.validate()?;
    let tol = &config.tolerances;
    let mut checks = Vec::new();

    // Hardy gap on random sequences
    let gap_trials: Vec<GapTrial> = (0..config.gap_trials)
        .into_par_iter()
        .map(|i| gap_trial(config, i))
        .collect();
    let supports: Vec<u64> = gap_trials.iter().map(|t| t.support).collect();
    let (min_index, min_relative_gap) = gap_trials
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, t)| {
            if t.relative_gap < bv {
                (i as u64, t.relative_gap)
            } else {
                (bi, bv)
            }
        });
    let min_dominance = gap_trials
        .iter()
        .map(|t| t.dominance)
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        "hardy_gap_nonnegative",
        min_relative_gap,
        Comparison::AtLeast,
        -tol.gap,
        true,
    ));
    checks.push(Check::new(
        "classical_gap_dominates_improved",
        min_dominance,
        Comparison::AtLeast,
        -tol.gap,
        true,
    ));
    let gap = GapSummary {
        trials: config.gap_trials,
        support: support_stats(&supports, config.max_support),
        min_relative_gap,
        min_relative_gap_trial: min_index,
        min_dominance_margin: min_dominance,
    };

    // Cutoff ground-state family
    let cutoff: Vec<CutoffRow> = config
        .cutoff_lengths
        .par_iter()
        .map(|&length| -> Result<CutoffRow> {
            let phi = cutoff_ground_state(length);
            let e = energy(&phi);
            let g = hardy_gap(&phi, &ImprovedWeight);
            let extended_gap = match config.extended_digits {
                Some(digits) => Some(cutoff_gap_extended(length, digits)?),
                None => None,
            };
            Ok(CutoffRow {
                length,
                energy: e,
                gap: g,
                relative_gap: g / e.max(1.0),
                extended_gap,
            })
        })
        .collect::<Result<_>>()?;
    let cutoff_min = cutoff
        .iter()
        .map(|r| r.relative_gap)
        .fold(f64::INFINITY, f64::min);
    if !cutoff.is_empty() {
        checks.push(Check::new(
            "cutoff_gap_nonnegative",
            cutoff_min,
            Comparison::AtLeast,
            -tol.gap,
            true,
        ));
    }
    if config.extended_digits.is_some() {
        let worst = cutoff
            .iter()
            .filter_map(|r| r.extended_gap.map(|x| (r.gap - x).abs() / r.energy.max(1.0)))
            .fold(0.0, f64::max);
        checks.push(Check::new(
            "cutoff_gap_matches_extended",
            worst,
            Comparison::AtMost,
            tol.gap,
            true,
        ));
    }

    // Operator identities
    let identity_trials: Vec<IdentityTrial> = (0..config.identity_trials)
        .into_par_iter()
        .map(|i| identity_trial(config, i))
        .collect();
    let worst = |f: fn(&IdentityTrial) -> f64| identity_trials.iter().map(f).fold(0.0, f64::max);
    let identities = IdentitySummary {
        trials: config.identity_trials,
        green: worst(|t| t.green),
        ground_state_transform: worst(|t| t.gst),
        unitarity: worst(|t| t.unitarity),
        energy_operator: worst(|t| t.energy_operator),
    };
    for (name, value) in [
        ("green_formula", identities.green),
        ("ground_state_transform", identities.ground_state_transform),
        ("unitarity", identities.unitarity),
        ("energy_operator_identity", identities.energy_operator),
    ] {
        checks.push(Check::new(name, value, Comparison::AtMost, tol.identity, true));
    }

    // p = 2 formulation equivalence
    let increment_trials: Vec<(f64, f64)> = (0..config.increment_trials)
        .into_par_iter()
        .map(|i| increment_trial(config, i))
        .collect::<Result<_>>()?;
    let increments = IncrementSummary {
        trials: config.increment_trials,
        max_disagreement: increment_trials.iter().map(|t| t.0).fold(0.0, f64::max),
        min_gap: increment_trials
            .iter()
            .map(|t| t.1)
            .fold(f64::INFINITY, f64::min),
    };
    checks.push(Check::new(
        "formulation_equivalence",
        increments.max_disagreement,
        Comparison::AtMost,
        tol.equivalence,
        true,
    ));
    checks.push(Check::new(
        "classical_gap_nonnegative",
        increments.min_gap,
        Comparison::AtLeast,
        0.0,
        true,
    ));

    // Ground-state residual
    let residual = ResidualSummary {
        n_max: config.residual_n,
        improved: ground_state_residual(&GroundState, &ImprovedWeight, config.residual_n)?,
        classical: ground_state_residual(&GroundState, &ClassicalWeight, config.residual_n)?,
        extended: match config.extended_digits {
            Some(digits) => Some(ground_state_residual_extended(config.residual_n, digits)?),
            None => None,
        },
    };
    checks.push(Check::new(
        "ground_state_residual",
        residual.improved,
        Comparison::AtMost,
        tol.residual,
        true,
    ));
    if let Some(extended) = residual.extended {
        checks.push(Check::new(
            "ground_state_residual_extended",
            extended,
            Comparison::AtMost,
            tol.residual,
            true,
        ));
    }

    // Eigenvalue scan
    let eigen = eigen_scan(&config.eigen_sizes, config.inflation, tol.eigen)?;
    let floor = eigen
        .rows
        .iter()
        .map(|r| r.improved)
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        "eigenvalue_floor",
        floor,
        Comparison::AtLeast,
        1.0 - tol.eigen_floor,
        true,
    ));
    checks.push(Check::new(
        "eigenvalue_monotone",
        max_increase(&eigen.rows),
        Comparison::AtMost,
        tol.eigen,
        true,
    ));
    let inflated_floor = eigen
        .rows
        .iter()
        .map(|r| r.inflated)
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        "inflated_weight_eigenvalue_floor",
        inflated_floor,
        Comparison::AtLeast,
        1.0,
        false,
    ));

    // Extended-precision closed form
    let extended_weight_error = match config.extended_digits {
        Some(digits) => {
            let worst = (1..=EXTENDED_WEIGHT_RANGE)
                .into_par_iter()
                .map(|n| -> Result<f64> {
                    let double = improved_weight_closed(n)?;
                    let ext = improved_weight_extended(n, digits)?.to_f64();
                    Ok((double / ext - 1.0).abs())
                })
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            checks.push(Check::new(
                "closed_form_matches_extended",
                worst,
                Comparison::AtMost,
                tol.extended,
                true,
            ));
            Some(worst)
        }
        None => None,
    };

    let passed = checks.iter().all(|c| c.passed || !c.hard);
    Ok(VerificationReport {
        config: config.clone(),
        gap,
        cutoff,
        identities,
        increments,
        residual,
        eigen,
        extended_weight_error,
        checks,
        passed,
    })
}

/// Largest `lambda(N_{i+1}) - lambda(N_i)` over consecutive rows; positive
/// values are monotonicity violations.
pub fn max_increase(rows: &[EigenRow]) -> f64 {
    rows.windows(2)
        .map(|p| p[1].improved - p[0].improved)
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0)
}

/// `lambda_min` of the improved and inflated pencils at each size, sorted by
/// size.
pub fn eigen_scan(sizes: &[u64], inflation: f64, tol: f64) -> Result<EigenScan> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let inflated_weight = Scaled {
        factor: 1.0 + inflation,
        inner: ImprovedWeight,
    };
    let rows = sizes
        .par_iter()
        .map(|&size| -> Result<EigenRow> {
            let improved = TruncatedOperatorPair::from_weight(&ImprovedWeight, size)?;
            let inflated = TruncatedOperatorPair::from_weight(&inflated_weight, size)?;
            Ok(EigenRow {
                size,
                improved: min_generalized_eigenvalue(&improved, tol)?,
                inflated: min_generalized_eigenvalue(&inflated, tol)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inflated_below_one = rows.iter().any(|r| r.inflated < 1.0);
    Ok(EigenScan {
        rows,
        inflation,
        inflated_below_one,
    })
}
