use hardy_core::operator::{
    apply_dirichlet_laplacian, apply_weighted_laplacian, energy, gst_defect, inner,
    unitarity_defect, weighted_form, weighted_inner,
};
use hardy_core::weight::{ConstantWeight, PotentialOf, Scaled, Squared, TabulatedWeight};
use hardy_core::{
    ClassicalWeight, CompactSequence, GroundState, ImprovedWeight, WeightFunction,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational_sequence(values: &[(i64, i64)]) -> CompactSequence<BigRational> {
    CompactSequence::new(values.iter().map(|&(n, d)| q(n, d)).collect())
}

fn rational_weight(values: &[(i64, i64)]) -> TabulatedWeight<BigRational> {
    TabulatedWeight::new(values.iter().map(|&(n, d)| q(n, d)).collect(), q(1, 1))
}

fn sequence() -> impl Strategy<Value = Vec<f64>> {
    vec(-1.0f64..=1.0, 1..200)
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[test]
fn energy_of_ramp_includes_cutoff_edge() {
    for n in [1u64, 2, 10, 100] {
        let ramp = CompactSequence::from_fn(n, |k| BigRational::from_integer(BigInt::from(k)));
        assert_eq!(
            energy(&ramp),
            BigRational::from_integer(BigInt::from(n + n * n))
        );
    }
}

#[test]
fn green_formula_is_exact_over_rationals() {
    let u = rational_weight(&[(1, 2), (3, 1), (2, 7), (5, 3), (1, 1), (9, 4)]);
    let phi = rational_sequence(&[(1, 3), (-2, 5), (7, 1), (0, 1), (-1, 9)]);
    let lhs = weighted_inner(&apply_weighted_laplacian(&u, &phi), &phi, &Squared(&u));
    assert_eq!(lhs, weighted_form(&u, &phi));
}

#[test]
fn ground_state_transform_is_exact_over_rationals() {
    let u = rational_weight(&[(1, 2), (3, 1), (2, 7), (5, 3), (1, 1), (9, 4), (2, 3)]);
    let phi = rational_sequence(&[(1, 3), (-2, 5), (7, 1), (0, 1), (-1, 9), (4, 3)]);
    let w = PotentialOf(&u);
    assert_eq!(gst_defect(&u, &w, &phi), q(0, 1));
    assert_eq!(unitarity_defect(&u, &phi), q(0, 1));
}

#[test]
fn weighted_inner_is_bilinear_and_symmetric_over_rationals() {
    let u = rational_weight(&[(2, 3), (5, 1), (1, 8), (7, 2)]);
    let f = rational_sequence(&[(1, 2), (-3, 4), (5, 6), (2, 1)]);
    let g = rational_sequence(&[(-1, 5), (2, 3), (0, 1)]);
    let h = rational_sequence(&[(4, 1), (1, 7), (-2, 9), (3, 5)]);
    let (a, b) = (q(3, 7), q(-5, 2));

    assert_eq!(weighted_inner(&f, &g, &u), weighted_inner(&g, &f, &u));

    let combo = CompactSequence::from_fn(4, |n| a.clone() * f.get(n) + b.clone() * h.get(n));
    let lhs = weighted_inner(&combo, &g, &u);
    let rhs = a.clone() * weighted_inner(&f, &g, &u) + b.clone() * weighted_inner(&h, &g, &u);
    assert_eq!(lhs, rhs);

    let combo_right = CompactSequence::from_fn(4, |n| a.clone() * g.get(n) + b.clone() * h.get(n));
    let lhs = weighted_inner(&f, &combo_right, &u);
    let rhs = a * weighted_inner(&f, &g, &u) + b * weighted_inner(&f, &h, &u);
    assert_eq!(lhs, rhs);
}

#[test]
fn weighted_form_scales_quadratically_over_rationals() {
    let u = rational_weight(&[(2, 3), (5, 1), (1, 8), (7, 2), (1, 1)]);
    let phi = rational_sequence(&[(1, 2), (-3, 4), (5, 6), (2, 1)]);
    let c = q(7, 3);
    let scaled = Scaled {
        factor: c.clone(),
        inner: u.clone(),
    };
    assert_eq!(
        weighted_form(&scaled, &phi),
        c.clone() * c * weighted_form(&u, &phi)
    );
}

#[test]
fn energy_operator_identity_is_exact_over_rationals() {
    let phi = rational_sequence(&[(1, 2), (-3, 4), (5, 6), (2, 1), (-7, 3)]);
    assert_eq!(energy(&phi), inner(&apply_dirichlet_laplacian(&phi), &phi));
}

#[test]
fn constant_weight_form_misses_boundary_edge() {
    // with u(0) = 0 the edge (0, 1) is absent from h_1, so h_1(δ₁) = 1 while energy(δ₁) = 2
    let d1 = CompactSequence::<f64>::delta(1);
    assert_eq!(weighted_form(&ConstantWeight(1.0), &d1), 1.0);
    assert_eq!(energy(&d1), 2.0);
    let phi = CompactSequence::new(vec![0.4, -1.0, 2.0]);
    let h1: f64 = weighted_form(&ConstantWeight(1.0), &phi);
    assert!((h1 - (energy(&phi) - 0.16)).abs() < 1e-14);
}

#[test]
fn gst_defect_with_improved_weight_on_random_sequences() {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    for _ in 0..20 {
        let phi = CompactSequence::from_fn(100, |_| next());
        assert!(gst_defect(&GroundState, &ImprovedWeight, &phi) <= 1e-12);
    }
    // the classical weight leaves (w − w_H) φ behind
    let d1 = CompactSequence::delta(1);
    let defect = gst_defect(&GroundState, &ClassicalWeight, &d1);
    assert!((defect - (2.0 - std::f64::consts::SQRT_2 - 0.25)).abs() < 1e-14);
}

proptest! {
    #[test]
    fn green_formula(values in sequence(), weights in vec(0.1f64..=10.0, 202)) {
        let phi = CompactSequence::new(values);
        let u = TabulatedWeight::new(weights, 1.0);
        let lhs = weighted_inner(&apply_weighted_laplacian(&u, &phi), &phi, &Squared(&u));
        let rhs = weighted_form(&u, &phi);
        prop_assert!(rhs >= 0.0);
        prop_assert!(relative(lhs, rhs) <= 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn green_formula_ground_state(values in sequence()) {
        let phi = CompactSequence::new(values);
        let lhs = weighted_inner(&apply_weighted_laplacian(&GroundState, &phi), &phi, &Squared(GroundState));
        prop_assert!(relative(lhs, weighted_form(&GroundState, &phi)) <= 1e-12);
    }

    #[test]
    fn ground_state_transform_invariance(values in sequence(), weights in vec(0.1f64..=10.0, 202)) {
        let phi = CompactSequence::new(values);
        let u = TabulatedWeight::new(weights, 1.0);
        let scale = apply_weighted_laplacian(&u, &phi).max_abs().max(1.0);
        prop_assert!(gst_defect(&u, &PotentialOf(&u), &phi) / scale <= 1e-12);
    }

    #[test]
    fn unitarity(values in sequence(), weights in vec(0.1f64..=10.0, 200)) {
        let phi = CompactSequence::new(values);
        let u = TabulatedWeight::new(weights, 1.0);
        let norm: f64 = phi.values().iter().enumerate()
            .map(|(i, v)| (u.value(i as u64 + 1) * v).powi(2)).sum();
        prop_assert!(unitarity_defect(&u, &phi) <= 1e-13 * norm.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn energy_operator_identity(values in sequence()) {
        let phi = CompactSequence::new(values);
        let e = energy(&phi);
        prop_assert!(relative(e, inner(&apply_dirichlet_laplacian(&phi), &phi)) <= 1e-12);
    }

    #[test]
    fn weighted_form_scaling(values in sequence(), c in 0.01f64..100.0) {
        let phi = CompactSequence::new(values);
        let scaled = Scaled { factor: c, inner: GroundState };
        let lhs = weighted_form(&scaled, &phi);
        let rhs = c * c * weighted_form(&GroundState, &phi);
        prop_assert!(relative(lhs, rhs) <= 1e-13);
    }

    #[test]
    fn dirichlet_laplacian_is_linear(a in sequence(), b in sequence(), s in -3.0f64..3.0) {
        let n = a.len().max(b.len()) as u64;
        let fa = CompactSequence::new(a).padded(n);
        let fb = CompactSequence::new(b).padded(n);
        let combo = CompactSequence::from_fn(n, |k| fa.get(k) + s * fb.get(k));
        let lhs = apply_dirichlet_laplacian(&combo);
        let la = apply_dirichlet_laplacian(&fa);
        let lb = apply_dirichlet_laplacian(&fb);
        for k in 1..=n + 1 {
            prop_assert!((lhs.get(k) - (la.get(k) + s * lb.get(k))).abs() <= 1e-13);
        }
    }
}
