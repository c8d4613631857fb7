use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hardy_bench::{fixture_sequence, quick_config};
use hardy_core::operator::{apply_weighted_laplacian, gst_defect};
use hardy_core::verify::{ground_state_residual, hardy_gap};
use hardy_core::weight::improved_weight_extended;
use hardy_core::{
    improved_weight_closed, improved_weight_series, min_generalized_eigenvalue, run_verification,
    series_coefficient, GroundState, ImprovedWeight, TruncatedOperatorPair, DEFAULT_EIGEN_TOL,
};

fn weights(c: &mut Criterion) {
    let mut group = c.benchmark_group("weights");
    group.bench_function("closed_1e4", |b| {
        b.iter(|| (1..=10_000u64).map(|n| improved_weight_closed(black_box(n)).unwrap()).sum::<f64>())
    });
    group.bench_function("series_k25_1e3", |b| {
        b.iter(|| (2..=1000u64).map(|n| improved_weight_series(black_box(n), 25).unwrap()).sum::<f64>())
    });
    group.bench_function("extended_40_digits", |b| {
        b.iter(|| improved_weight_extended(black_box(123_457), 40).unwrap())
    });
    group.bench_function("coefficients_50", |b| {
        b.iter(|| (1..=50u64).map(|k| series_coefficient(black_box(k)).unwrap()).collect::<Vec<_>>())
    });
    group.finish();
}

fn operators(c: &mut Criterion) {
    let mut group = c.benchmark_group("operators");
    let phi = fixture_sequence(1000).padded(1000);
    group.bench_function("weighted_laplacian_1e3", |b| {
        b.iter(|| apply_weighted_laplacian(&GroundState, black_box(&phi)))
    });
    group.bench_function("gst_defect_1e3", |b| {
        b.iter(|| gst_defect(&GroundState, &ImprovedWeight, black_box(&phi)))
    });
    group.bench_function("hardy_gap_1e3", |b| b.iter(|| hardy_gap(black_box(&phi), &ImprovedWeight)));
    group.bench_function("residual_1e5", |b| {
        b.iter(|| ground_state_residual(&GroundState, &ImprovedWeight, black_box(100_000)).unwrap())
    });
    group.finish();
}

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_eigenvalue");
    group.sample_size(20);
    for size in [100u64, 1000, 10_000] {
        let pair = TruncatedOperatorPair::from_weight(&ImprovedWeight, size).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(size), &pair, |b, pair| {
            b.iter(|| min_generalized_eigenvalue(pair, DEFAULT_EIGEN_TOL).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let config = quick_config();
    let mut group = c.benchmark_group("verification");
    group.sample_size(10);
    group.bench_function("quick_battery", |b| b.iter(|| run_verification(black_box(&config)).unwrap()));
    group.finish();
}

criterion_group!(benches, weights, operators, spectral, verification);
criterion_main!(benches);
