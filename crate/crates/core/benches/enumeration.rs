use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use maitred::{mc_strategy, Enumerator, Execution, StrategyId};

const MODES: [(&str, Execution); 2] = [("serial", Execution::Serial), ("parallel", Execution::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_s");
    group.sample_size(10);
    for n in [14, 18] {
        for (name, exec) in MODES {
            let en = Enumerator::new().with_execution(exec);
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| en.distribution(StrategyId::S, black_box(n)).unwrap())
            });
        }
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("mc_s_n1000");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| mc_strategy(StrategyId::S, 1000, 2_000, 7, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, monte_carlo);
criterion_main!(benches);
