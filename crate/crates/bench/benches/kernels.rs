use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ewm_bench::{config, free_trace, state};
use ewm_core::evolve::compute_rhs;
use ewm_core::lp_norms::{x_norm, DyadicBump};
use ewm_core::{step, HankelPlan};

fn rhs(c: &mut Criterion) {
    let mut g = c.benchmark_group("rhs");
    for n in [257, 1025] {
        let s = state(n);
        let cfg = config(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| compute_rhs(black_box(s), cfg.mode, &cfg.target, 4).unwrap())
        });
    }
    g.finish();
}

fn rk4_step(c: &mut Criterion) {
    let mut g = c.benchmark_group("step");
    for n in [257, 1025] {
        let s = state(n);
        let cfg = config(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| step(black_box(s), cfg.dt(), &cfg).unwrap())
        });
    }
    g.finish();
}

fn hankel(c: &mut Criterion) {
    let mut g = c.benchmark_group("hankel");
    for n in [257, 1025] {
        let s = state(n);
        let plan = HankelPlan::cached(s.grid);
        let spec = plan.forward(&s.v);
        g.bench_with_input(BenchmarkId::new("forward", n), &s.v, |b, v| {
            b.iter(|| plan.forward(black_box(v)))
        });
        g.bench_with_input(BenchmarkId::new("inverse", n), &spec, |b, sp| {
            b.iter(|| plan.inverse(black_box(sp)))
        });
    }
    g.finish();
}

fn norms(c: &mut Criterion) {
    let trace = free_trace(257, 17);
    c.bench_function("x_norm/257x17", |b| {
        b.iter(|| x_norm(black_box(&trace), &DyadicBump))
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(20);
    targets = rhs, rk4_step, hankel, norms
}
criterion_main!(kernels);
