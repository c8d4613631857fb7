//! Laplacians, quadratic forms and the ground state transform on the path
//! graph `N_0 = {0, 1, 2, ...}` with `n ~ m` iff `|n - m| = 1`.
//!
//! Boundary conventions:
//!
//! * the unweighted Dirichlet Laplacian keeps the edge `(0, 1)` with
//!   `phi(0) = 0`, so `Δphi(1) = 2 phi(1) - phi(2)`;
//! * `Δ_u` and `h_u` use `u(0) = 0`, so the edge `(0, 1)` carries weight
//!   `u(1) u(0) = 0` and drops out.
//!
//! Everything here is explicit summation over the support; no matrices are
//! assembled.

use crate::sequence::CompactSequence;
use crate::weight::{Scalar, Squared, WeightFunction};

fn abs<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        T::zero() - x
    } else {
        x
    }
}

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

/// `(Δphi)(n) = 2phi(n) - phi(n-1) - phi(n+1)` on `1..=N+1`.
pub fn apply_dirichlet_laplacian<T: Scalar>(phi: &CompactSequence<T>) -> CompactSequence<T> {
    CompactSequence::from_fn(phi.support() + 1, |n| {
        let centre = phi.get(n);
        centre.clone() + centre - phi.get(n - 1) - phi.get(n + 1)
    })
}

/// `(Δ_u phi)(n) = u(n)^-2 * sum_{m ~ n} u(n) u(m) (phi(n) - phi(m))` on
/// `1..=N+1`.
pub fn apply_weighted_laplacian<T, U>(u: &U, phi: &CompactSequence<T>) -> CompactSequence<T>
where
    T: Scalar,
    U: WeightFunction<T> + ?Sized,
{
    CompactSequence::from_fn(phi.support() + 1, |n| {
        let un = u.at(n);
        let centre = phi.get(n);
        let flux = [n - 1, n + 1].into_iter().fold(T::zero(), |acc, m| {
            acc + un.clone() * u.at(m) * (centre.clone() - phi.get(m))
        });
        flux / (un.clone() * un)
    })
}

/// `sum_{n=1}^{N+1} (phi(n) - phi(n-1))^2` with `phi(0) = 0`.
pub fn energy<T: Scalar>(phi: &CompactSequence<T>) -> T {
    (1..=phi.support() + 1).fold(T::zero(), |acc, n| {
        let d = phi.get(n) - phi.get(n - 1);
        acc + d.clone() * d
    })
}

/// `h_u(phi) = 1/2 * sum_{n in N} sum_{m ~ n} u(n) u(m) (phi(n) - phi(m))^2`.
///
/// Every edge inside the support is visited from both ends, as written.
pub fn weighted_form<T, U>(u: &U, phi: &CompactSequence<T>) -> T
where
    T: Scalar,
    U: WeightFunction<T> + ?Sized,
{
    let total = (1..=phi.support() + 1).fold(T::zero(), |acc, n| {
        let un = u.at(n);
        [n - 1, n + 1].into_iter().fold(acc, |acc, m| {
            let d = phi.get(n) - phi.get(m);
            acc + un.clone() * u.at(m) * d.clone() * d
        })
    });
    total / two()
}

/// `<f, g>_u = sum_{n >= 1} f(n) g(n) u(n)`.
pub fn weighted_inner<T, U>(f: &CompactSequence<T>, g: &CompactSequence<T>, u: &U) -> T
where
    T: Scalar,
    U: WeightFunction<T> + ?Sized,
{
    let common = f.support().min(g.support());
    (1..=common).fold(T::zero(), |acc, n| acc + f.get(n) * g.get(n) * u.value(n))
}

/// Unweighted `<f, g> = sum_{n >= 1} f(n) g(n)`.
pub fn inner<T: Scalar>(f: &CompactSequence<T>, g: &CompactSequence<T>) -> T {
    f.values()
        .iter()
        .zip(g.values())
        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// `T_u phi = u * phi`.
pub fn multiply_by_weight<T, U>(u: &U, phi: &CompactSequence<T>) -> CompactSequence<T>
where
    T: Scalar,
    U: WeightFunction<T> + ?Sized,
{
    phi.map(|n, v| u.value(n) * v.clone())
}

/// `T_u^-1 psi = psi / u`.
pub fn divide_by_weight<T, U>(u: &U, psi: &CompactSequence<T>) -> CompactSequence<T>
where
    T: Scalar,
    U: WeightFunction<T> + ?Sized,
{
    psi.map(|n, v| v.clone() / u.value(n))
}

/// `max_n |[T_u^-1 (Δ - w) T_u phi](n) - [Δ_u phi](n)|` over `1..=N+1`.
///
/// Vanishes up to rounding whenever `(Δ - w) u = 0` on `N`. The left side
/// is composed from [`multiply_by_weight`], [`apply_dirichlet_laplacian`]
/// and [`divide_by_weight`]; the right side is the `Δ_u` stencil.
pub fn gst_defect<T, U, W>(u: &U, w: &W, phi: &CompactSequence<T>) -> T
where
    T: Scalar,
    U: WeightFunction<T> + ?Sized,
    W: WeightFunction<T> + ?Sized,
{
    let lifted = multiply_by_weight(u, phi);
    let laplacian = apply_dirichlet_laplacian(&lifted);
    let shifted = laplacian.map(|n, v| v.clone() - w.value(n) * lifted.get(n));
    let conjugated = divide_by_weight(u, &shifted);
    let direct = apply_weighted_laplacian(u, phi);
    conjugated
        .values()
        .iter()
        .zip(direct.values())
        .fold(T::zero(), |acc, (a, b)| {
            let d = abs(a.clone() - b.clone());
            if d > acc {
                d
            } else {
                acc
            }
        })
}

/// `| ||T_u phi||^2 - ||phi||^2_{u^2} |`.
pub fn unitarity_defect<T, U>(u: &U, phi: &CompactSequence<T>) -> T
where
    T: Scalar,
    U: WeightFunction<T> + ?Sized,
{
    let lifted = multiply_by_weight(u, phi);
    let plain = inner(&lifted, &lifted);
    let weighted = weighted_inner(phi, phi, &Squared(u));
    abs(plain - weighted)
}

impl CompactSequence<f64> {
    /// `max_n |phi(n)|`, zero for the empty sequence.
    pub fn max_abs(&self) -> f64 {
        self.values().iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}
