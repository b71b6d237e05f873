//! Rayon pool sizes against each other, and (when built with
//! `--no-default-features`) the sequential fallback under the same ids.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffcube_core::{
    par, run_scan, run_suite, search_diff_cover, PrimeField, ScanConfig, ScanTask, SearchConfig,
    Suite, SuiteParams,
};

fn worker_counts() -> Vec<usize> {
    if !par::is_parallel() {
        return vec![1];
    }
    let all = par::available_threads();
    if all > 1 {
        vec![1, all]
    } else {
        vec![1]
    }
}

fn label(threads: usize) -> String {
    if par::is_parallel() {
        format!("rayon-{threads}")
    } else {
        "sequential".into()
    }
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for task in [ScanTask::Pair2, ScanTask::Pair3, ScanTask::Identities] {
        let pmax = if task == ScanTask::Identities {
            600
        } else {
            2000
        };
        for threads in worker_counts() {
            let config = ScanConfig {
                threads,
                ..ScanConfig::new(task, 2, pmax)
            };
            group.bench_with_input(
                BenchmarkId::new(task.as_str(), label(threads)),
                &config,
                |b, cfg| b.iter(|| black_box(run_scan(cfg).unwrap())),
            );
        }
    }
    group.finish();
}

fn diff_cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("diffcover");
    let fields: Vec<Arc<PrimeField>> = [7u64, 19, 97, 331]
        .iter()
        .map(|&p| Arc::new(PrimeField::new(p).unwrap()))
        .collect();
    for threads in worker_counts() {
        group.bench_function(BenchmarkId::new("p<=331", label(threads)), |b| {
            b.iter(|| {
                par::with_threads(threads, || {
                    for f in &fields {
                        black_box(search_diff_cover(f, &SearchConfig::default()).unwrap());
                    }
                })
            })
        });
    }
    group.finish();
}

fn inner_product_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("inner-product");
    group.sample_size(10);
    let params = SuiteParams {
        p: Some(199),
        trials: 50,
        seed: 1,
        ..SuiteParams::default()
    };
    for threads in worker_counts() {
        group.bench_with_input(
            BenchmarkId::new("p=199", label(threads)),
            &params,
            |b, params| {
                b.iter(|| {
                    par::with_threads(threads, || {
                        black_box(run_suite(Suite::InnerProduct, params).unwrap())
                    })
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, scans, diff_cover, inner_product_trials);
criterion_main!(benches);
