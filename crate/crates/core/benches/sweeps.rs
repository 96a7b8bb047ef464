//! Sequential versus rayon sweeps over the verification suites.
//!
//! Without the `parallel` feature both arms run the same sequential loop.

use std::thread::available_parallelism;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use umbral_mzv::verify::{cases, run_cases, Limits, Suite};

fn sweeps(c: &mut Criterion) {
    let threads = available_parallelism().map(|n| n.get()).unwrap_or(1).max(2);
    let workloads = [
        (Suite::OracleH, Limits { max_depth: 3, max_weight: 3, max_upper: 8, bound: 0 }),
        (Suite::ZetaTriple, Limits { max_depth: 3, max_weight: 5, max_upper: 0, bound: 0 }),
        (Suite::OracleLi, Limits { max_depth: 2, max_weight: 3, max_upper: 8, bound: 0 }),
        (Suite::EgfF, Suite::EgfF.default_limits()),
    ];
    for (suite, limits) in workloads {
        let work = cases(suite, &limits);
        let mut group = c.benchmark_group(suite.name());
        group.sample_size(10);
        group.bench_function(BenchmarkId::new("sequential", work.len()), |b| b.iter(|| run_cases(&work, 1)));
        group.bench_function(BenchmarkId::new("parallel", work.len()), |b| b.iter(|| run_cases(&work, threads)));
        group.finish();
    }
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
