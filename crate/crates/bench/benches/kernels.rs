use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use linv_bench::{dense_unit, embed_input, inert_case, split_case, PRECISIONS};
use linv_core::linv::run_case;
use linv_core::padic::log_iw;

fn log(c: &mut Criterion) {
    let mut g = c.benchmark_group("log_iw Q_25");
    for n in PRECISIONS {
        let x = dense_unit(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| b.iter(|| log_iw(black_box(x)).unwrap()));
    }
    g.finish();
}

fn embed(c: &mut Criterion) {
    let mut g = c.benchmark_group("embed sextic at 13");
    for n in PRECISIONS {
        let input = embed_input(n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &input, |b, i| {
            b.iter(|| i.embedding.embed(black_box(&i.element)))
        });
    }
    g.finish();
}

fn solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("membership solve");
    for n in PRECISIONS {
        let case = inert_case(n).unwrap();
        let sys = case.membership_system().unwrap();
        let target = (n - 10) as i64;
        g.bench_with_input(BenchmarkId::from_parameter(n), &sys, |b, s| {
            b.iter(|| s.system.solve(black_box(target)).unwrap())
        });
    }
    g.finish();
}

fn full_case(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_case");
    g.sample_size(20);
    for n in PRECISIONS {
        let split = split_case(n).unwrap();
        let inert = inert_case(n).unwrap();
        g.bench_with_input(BenchmarkId::new("iq-split", n), &split, |b, c| b.iter(|| run_case(c).unwrap()));
        g.bench_with_input(BenchmarkId::new("iq-inert", n), &inert, |b, c| b.iter(|| run_case(c).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, log, embed, solver, full_case);
criterion_main!(benches);
