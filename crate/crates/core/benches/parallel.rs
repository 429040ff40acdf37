use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frobcode::code::{build_code, lemma_sweep, DEFAULT_ENUM_CAP};
use frobcode::exec::{with_mode, Mode};
use frobcode::graph::{build_gamma, measure_srg};
use frobcode::search::{search, SearchMode, SearchSpec};
use frobcode::verify::{verify_ring, VerifyOptions};
use frobcode::{build_ring, WeightTable};

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn weights(spec: &str) -> Arc<WeightTable> {
    let ring = build_ring(&spec.parse().unwrap()).unwrap();
    Arc::new(WeightTable::new(Arc::new(ring)).unwrap())
}

fn bench_search(c: &mut Criterion) {
    let wt = weights("Z4");
    let spec = SearchSpec {
        k: 2,
        n_max: 6,
        mode: SearchMode::Grid { mult_cap: 6 },
        dedupe: true,
        seed: 0,
        cap: DEFAULT_ENUM_CAP,
    };
    let mut g = c.benchmark_group("search Z4 k=2 n<=6");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_mode(mode, || search(&wt, &spec).unwrap()))
        });
    }
    g.finish();
}

fn bench_graph_and_lemmas(c: &mut Criterion) {
    // elliptic quadric in PG(3,3): Gamma is SRG(81,60,45,42)
    let wt = weights("GF(3)");
    let rows = vec![
        vec![0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        vec![1, 0, 1, 1, 1, 1, 2, 2, 2, 2],
        vec![0, 0, 1, 1, 2, 2, 0, 0, 1, 2],
        vec![0, 0, 1, 2, 1, 2, 1, 2, 0, 0],
    ];
    let code = build_code(&wt, &rows, DEFAULT_ENUM_CAP).unwrap();
    let gamma = build_gamma(&code).unwrap();
    let mut g = c.benchmark_group("ovoid code GF(3) k=4 n=10");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new("measure_srg", name), |b| {
            b.iter(|| with_mode(mode, || measure_srg(&gamma.graph)))
        });
        g.bench_function(BenchmarkId::new("lemma_sweep", name), |b| {
            b.iter(|| with_mode(mode, || lemma_sweep(&code, 0).unwrap()))
        });
    }
    g.finish();
}

fn bench_verify(c: &mut Criterion) {
    let wt = weights("M2(GF(2))");
    let opts = VerifyOptions { matrices: 20, ..VerifyOptions::default() };
    let mut g = c.benchmark_group("verify M2(GF(2))");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| with_mode(mode, || verify_ring(&wt, &opts).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_search, bench_graph_and_lemmas, bench_verify);
criterion_main!(benches);
