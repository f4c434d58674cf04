use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use turan_bench::dense_graph;
use turan_core::{IndependenceSequence, SolveSpec, Solver};

fn independence_number(c: &mut Criterion) {
    let mut group = c.benchmark_group("independence_number");
    for n in [16, 24, 32] {
        let h = dense_graph(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| black_box(h).independence_number()));
    }
    group.finish();
}

fn min_cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_cover");
    group.sample_size(10);
    for (n, k) in [(7, 5), (8, 5), (7, 4)] {
        let spec = SolveSpec::t(n, k, 3);
        // A fresh solver each time so no memoized optimum is reused.
        group.bench_function(spec.key(), |b| b.iter(|| Solver::default().solve(black_box(&spec)).unwrap()));
    }
    group.finish();
}

fn decomposed(c: &mut Criterion) {
    let mut group = c.benchmark_group("decomposed");
    group.sample_size(10);
    let specs = [
        SolveSpec::t_components(9, 5, 3, 2),
        SolveSpec::t(8, 5, 3).enumerate_all(true),
        SolveSpec::tilde_t(12, 3, IndependenceSequence::new(vec![2, 3]).unwrap()),
    ];
    for spec in specs {
        group.bench_function(spec.key(), |b| b.iter(|| Solver::default().solve(black_box(&spec)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, independence_number, min_cover, decomposed);
criterion_main!(benches);
