//! Hardy weights on the half-line.
//!
//! The improved weight is `w(n) = 2 - sqrt(1 + 1/n) - sqrt(1 - 1/n)`, the
//! potential generated by the ground state `u(n) = sqrt(n)` through
//! `w = Δu / u`. For `n >= 2` it expands as
//! `sum_k C(4k, 2k) / ((4k - 1) 2^(4k-1)) n^(-2k)`, whose leading term is the
//! classical weight `1 / (4n^2)`.

use std::fmt::Debug;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::Num;

use crate::error::{HardyError, Result};
use crate::precise::{decimal_len, Fixed, Precision};
use crate::rational::ExactRational;

/// Number types the operators can run over: `f64` for the numerical path and
/// [`num_rational::BigRational`] for exact checks.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync {}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + Debug + Send + Sync {}

/// A real function on `N = {1, 2, ...}` extended by `u(0) = 0`.
///
/// Used both for weights (`u > 0` on `N`) and for potentials `w`. Positivity
/// is a contract of the caller; see [`check_positive`].
pub trait WeightFunction<T: Scalar = f64>: Send + Sync {
    /// Value at `n >= 1`.
    fn value(&self, n: u64) -> T;

    /// Value at any index, honouring the boundary convention `u(0) = 0`.
    fn at(&self, n: u64) -> T {
        if n == 0 {
            T::zero()
        } else {
            self.value(n)
        }
    }

    /// Dirichlet Laplacian `2u(n) - u(n-1) - u(n+1)` at `n >= 1`.
    ///
    /// Weights with a closed form may override this with a
    /// cancellation-free expression.
    fn laplacian(&self, n: u64) -> T {
        let centre = self.at(n);
        centre.clone() + centre - self.at(n - 1) - self.at(n + 1)
    }
}

impl<T: Scalar, W: WeightFunction<T> + ?Sized> WeightFunction<T> for &W {
    fn value(&self, n: u64) -> T {
        (**self).value(n)
    }

    fn laplacian(&self, n: u64) -> T {
        (**self).laplacian(n)
    }
}

impl<T: Scalar, W: WeightFunction<T> + ?Sized> WeightFunction<T> for Box<W> {
    fn value(&self, n: u64) -> T {
        (**self).value(n)
    }

    fn laplacian(&self, n: u64) -> T {
        (**self).laplacian(n)
    }
}

/// Checks `u(n) > 0` for `1 <= n <= n_max`.
pub fn check_positive<W: WeightFunction + ?Sized>(u: &W, n_max: u64) -> Result<()> {
    for n in 1..=n_max {
        let value = u.value(n);
        if !(value > 0.0) {
            return Err(HardyError::NonPositive {
                what: "weight",
                index: n,
                value,
            });
        }
    }
    Ok(())
}

/// The ground state `u(n) = sqrt(n)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroundState;

impl WeightFunction for GroundState {
    fn value(&self, n: u64) -> f64 {
        ground_state(n)
    }

    fn laplacian(&self, n: u64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        // 2√n − √(n−1) − √(n+1) after rationalizing both differences
        let below = ground_state(n - 1);
        let centre = ground_state(n);
        let above = ground_state(n + 1);
        2.0 / ((above + below) * (centre + below) * (above + centre))
    }
}

/// The improved Hardy weight, evaluated from its closed form.
#[derive(Clone, Copy, Debug, Default)]
pub struct ImprovedWeight;

impl WeightFunction for ImprovedWeight {
    fn value(&self, n: u64) -> f64 {
        closed_form(n)
    }
}

/// The classical Hardy weight `1 / (4n^2)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClassicalWeight;

impl WeightFunction for ClassicalWeight {
    fn value(&self, n: u64) -> f64 {
        let n = n as f64;
        0.25 / (n * n)
    }
}

/// `u(n) = c` on `N`.
#[derive(Clone, Debug)]
pub struct ConstantWeight<T = f64>(pub T);

impl<T: Scalar> WeightFunction<T> for ConstantWeight<T> {
    fn value(&self, _n: u64) -> T {
        self.0.clone()
    }
}

/// Explicit values on `1..=len`, continued by a constant tail.
#[derive(Clone, Debug)]
pub struct TabulatedWeight<T = f64> {
    values: Vec<T>,
    tail: T,
}

impl<T: Scalar> TabulatedWeight<T> {
    /// `values[i]` is the value at `n = i + 1`.
    pub fn new(values: Vec<T>, tail: T) -> Self {
        Self { values, tail }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

impl<T: Scalar> WeightFunction<T> for TabulatedWeight<T> {
    fn value(&self, n: u64) -> T {
        self.values
            .get((n - 1) as usize)
            .unwrap_or(&self.tail)
            .clone()
    }
}

/// `c * u`.
#[derive(Clone, Debug)]
pub struct Scaled<W, T = f64> {
    pub factor: T,
    pub inner: W,
}

impl<T: Scalar, W: WeightFunction<T>> WeightFunction<T> for Scaled<W, T> {
    fn value(&self, n: u64) -> T {
        self.factor.clone() * self.inner.value(n)
    }
}

/// `u^2`, the measure of `l^2(N, u^2)`.
#[derive(Clone, Debug)]
pub struct Squared<W>(pub W);

impl<T: Scalar, W: WeightFunction<T>> WeightFunction<T> for Squared<W> {
    fn value(&self, n: u64) -> T {
        let v = self.0.value(n);
        v.clone() * v
    }
}

/// Adapter turning a closure into a [`WeightFunction`].
#[derive(Clone, Copy)]
pub struct FnWeight<F>(pub F);

impl<T: Scalar, F: Fn(u64) -> T + Send + Sync> WeightFunction<T> for FnWeight<F> {
    fn value(&self, n: u64) -> T {
        (self.0)(n)
    }
}

/// The potential `w = Δu / u` generated by a positive function `u`.
///
/// `(Δ - w) u = 0` on `N` holds by construction. The values may be negative
/// for a general `u`.
#[derive(Clone, Debug)]
pub struct PotentialOf<W>(pub W);

impl<T: Scalar, W: WeightFunction<T>> WeightFunction<T> for PotentialOf<W> {
    fn value(&self, n: u64) -> T {
        self.0.laplacian(n) / self.0.value(n)
    }
}

fn require_index(what: &'static str, n: u64, min: u64, requirement: &'static str) -> Result<()> {
    if n < min {
        Err(HardyError::Domain {
            what,
            index: n,
            requirement,
        })
    } else {
        Ok(())
    }
}

/// Exact classical weight `1 / (4n^2)`.
pub fn classical_hardy_weight(n: u64) -> Result<ExactRational> {
    require_index("classical_hardy_weight", n, 1, "n >= 1")?;
    let n = BigInt::from(n);
    Ok(ExactRational::new(1, BigInt::from(4) * &n * &n))
}

/// Series coefficient `C(4k, 2k) / ((4k - 1) 2^(4k-1))`, computed with exact
/// integer binomials.
pub fn series_coefficient(k: u64) -> Result<ExactRational> {
    require_index("series_coefficient", k, 1, "k >= 1")?;
    let binom = num_integer::binomial(BigUint::from(4 * k), BigUint::from(2 * k));
    let denom = BigUint::from(4 * k - 1) << (4 * k - 1);
    Ok(ExactRational::new(BigInt::from(binom), BigInt::from(denom)))
}

/// Generalized binomial coefficient `C(1/2, k)`.
pub fn half_binomial(k: u64) -> ExactRational {
    let half = ExactRational::new(1, 2);
    (0..k).fold(ExactRational::one(), |acc, i| {
        let factor = &half - &ExactRational::from_integer(i);
        &(&acc * &factor) / &ExactRational::from_integer(i + 1)
    })
}

const COEFFICIENT_CACHE: u64 = 64;

fn coefficient_f64(k: u64) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (1..=COEFFICIENT_CACHE)
            .map(|k| series_coefficient(k).map(|c| c.to_f64()).unwrap_or(f64::NAN))
            .collect()
    });
    match table.get((k - 1) as usize) {
        Some(&c) => c,
        None => series_coefficient(k).map_or(f64::NAN, |c| c.to_f64()),
    }
}

// 2 − √(1+x) − √(1−x) = 2x² / ((a+b)(1+a)(1+b)) with a = √(1+x), b = √(1−x);
// the right-hand side has no cancellation for large n.
fn closed_form(n: u64) -> f64 {
    let x = 1.0 / n as f64;
    let a = (1.0 + x).sqrt();
    let b = (1.0 - x).sqrt();
    2.0 * x * x / ((a + b) * (1.0 + a) * (1.0 + b))
}

/// Improved weight `2 - sqrt(1 + 1/n) - sqrt(1 - 1/n)` in double precision.
///
/// At `n = 1` this is `2 - sqrt(2)`.
pub fn improved_weight_closed(n: u64) -> Result<f64> {
    require_index("improved_weight_closed", n, 1, "n >= 1")?;
    Ok(closed_form(n))
}

/// Improved weight evaluated directly from `2 - sqrt(1 + 1/n) - sqrt(1 - 1/n)`
/// in decimal fixed point, carrying enough guard digits that the result has
/// at least `digits` correct significant digits.
pub fn improved_weight_extended(n: u64, digits: u32) -> Result<Fixed> {
    require_index("improved_weight_extended", n, 1, "n >= 1")?;
    let scale = digits + 2 * decimal_len(n) + 10;
    let two = Fixed::from_integer(2, scale);
    let plus = Fixed::from_ratio(n + 1, n, scale).sqrt();
    let minus = Fixed::from_ratio(n - 1, n, scale).sqrt();
    Ok(&(&two - &plus) - &minus)
}

/// Improved weight at the requested working precision, rounded to `f64`.
pub fn improved_weight_with(n: u64, precision: Precision) -> Result<f64> {
    match precision {
        Precision::Double => improved_weight_closed(n),
        Precision::Extended { digits } => improved_weight_extended(n, digits).map(|w| w.to_f64()),
    }
}

fn check_series_args(n: u64, terms: u64) -> Result<()> {
    require_index("improved_weight_series", n, 2, "n >= 2")?;
    require_index("improved_weight_series truncation", terms, 1, "K >= 1")
}

/// Partial sum of the first `terms` series terms at `n >= 2`.
///
/// Summed from the leading term down, so the result is nondecreasing in
/// `terms` even after rounding.
pub fn improved_weight_series(n: u64, terms: u64) -> Result<f64> {
    check_series_args(n, terms)?;
    let n2 = (n as f64) * (n as f64);
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=terms {
        power /= n2;
        sum += coefficient_f64(k) * power;
    }
    Ok(sum)
}

/// Exact rational partial sum of the first `terms` series terms.
pub fn improved_weight_series_exact(n: u64, terms: u64) -> Result<ExactRational> {
    check_series_args(n, terms)?;
    let inv_n2 = ExactRational::new(1, BigInt::from(n) * BigInt::from(n));
    (1..=terms)
        .map(|k| Ok(&series_coefficient(k)? * &inv_n2.pow(k as u32)))
        .sum()
}

/// The ground state `sqrt(n)`; zero at the boundary.
pub fn ground_state(n: u64) -> f64 {
    (n as f64).sqrt()
}

/// `(Δu)(n) / u(n)` for a positive function `u`.
///
/// For `u = sqrt` this reproduces the improved weight. The result may be
/// negative for a general `u`.
pub fn weight_from_positive_solution<T: Scalar, W: WeightFunction<T> + ?Sized>(
    u: &W,
    n: u64,
) -> Result<T> {
    require_index("weight_from_positive_solution", n, 1, "n >= 1")?;
    Ok(u.laplacian(n) / u.value(n))
}
