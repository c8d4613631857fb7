//! Truncated pencils `A phi = lambda W phi` and their smallest eigenvalue.
//!
//! `A` is the `N x N` Dirichlet Laplacian of the path (diagonal 2,
//! off-diagonal -1) and `W = diag(w(1), ..., w(N))`. The smallest pencil
//! eigenvalue is the minimum of `energy(phi) / sum w phi^2` over `phi`
//! supported in `1..=N`, so `lambda_min >= 1` for every `N` is the
//! finite-dimensional form of the Hardy inequality.

use serde::{Deserialize, Serialize};

use crate::error::{HardyError, Result};
use crate::weight::WeightFunction;

/// Guard substituted for a vanishing pivot in the Sturm recurrence.
const PIVOT_GUARD: f64 = f64::MIN_POSITIVE / f64::EPSILON;

/// Default absolute tolerance for [`min_generalized_eigenvalue`].
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedOperatorPair {
    weights: Vec<f64>,
}

impl TruncatedOperatorPair {
    /// Builds the pair from the diagonal of `W`; rejects an empty diagonal
    /// and any non-positive entry.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(HardyError::Domain {
                what: "truncation size",
                index: 0,
                requirement: "N >= 1",
            });
        }
        if let Some((i, &value)) = weights.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
            return Err(HardyError::NonPositive {
                what: "pencil weight",
                index: i as u64 + 1,
                value,
            });
        }
        Ok(Self { weights })
    }

    /// Samples `w` on `1..=size`.
    pub fn from_weight<W: WeightFunction + ?Sized>(w: &W, size: u64) -> Result<Self> {
        Self::new((1..=size).map(|n| w.value(n)).collect())
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Diagonal and off-diagonal of `W^-1/2 A W^-1/2`.
    pub fn symmetric_tridiagonal(&self) -> (Vec<f64>, Vec<f64>) {
        let diag = self.weights.iter().map(|w| 2.0 / w).collect();
        let off = self
            .weights
            .windows(2)
            .map(|p| -1.0 / (p[0] * p[1]).sqrt())
            .collect();
        (diag, off)
    }

    /// `phi^T A phi / phi^T W phi` for `phi` on `1..=N`.
    pub fn rayleigh_quotient(&self, phi: &[f64]) -> f64 {
        assert_eq!(phi.len(), self.size(), "vector length must equal N");
        let mut stiffness = 0.0;
        let mut mass = 0.0;
        let mut previous = 0.0;
        for (&p, &w) in phi.iter().zip(&self.weights) {
            stiffness += (p - previous) * (p - previous);
            mass += w * p * p;
            previous = p;
        }
        stiffness += previous * previous;
        stiffness / mass
    }

    /// Number of pencil eigenvalues strictly below `lambda`.
    ///
    /// Counts negative pivots of the `LDL^T` factorization of
    /// `A - lambda W`. The pivots are those of `W^-1/2 A W^-1/2 - lambda I`
    /// multiplied by `w(i) > 0`, so the sign sequence is the same Sturm
    /// sequence while the entries stay of order one.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut pivot = f64::INFINITY;
        for &w in &self.weights {
            let coupling = if pivot.is_infinite() { 0.0 } else { 1.0 / pivot };
            pivot = (2.0 - lambda * w) - coupling;
            if pivot.abs() < PIVOT_GUARD {
                pivot = if pivot < 0.0 { -PIVOT_GUARD } else { PIVOT_GUARD };
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Bisection bracket `[0, 2 max(1/w) + 1]`: `A` is positive definite and
    /// the Rayleigh quotient of a unit vector `e_i` is `2 / w(i)`.
    pub fn bisection_bracket(&self) -> (f64, f64) {
        let max_inv = self.weights.iter().fold(0.0f64, |acc, w| acc.max(1.0 / w));
        (0.0, 2.0 * max_inv + 1.0)
    }
}

/// Smallest eigenvalue of the pencil, by Sturm-sequence bisection to
/// absolute accuracy `tol`.
pub fn min_generalized_eigenvalue(pair: &TruncatedOperatorPair, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(HardyError::Config(format!(
            "eigenvalue tolerance must be positive and finite, got {tol}"
        )));
    }
    let (mut lo, mut hi) = pair.bisection_bracket();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pair.sturm_count(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
