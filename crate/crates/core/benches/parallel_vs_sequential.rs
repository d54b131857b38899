//! Compares the data-parallel inner loops against a single-threaded run of
//! the same code. With the default `parallel` feature the two variants are
//! the global rayon pool versus a 1-thread pool; without it only the
//! sequential fallback exists and is benched directly.

use criterion::{criterion_group, criterion_main, Criterion};
use penning_core::catalog::{self, CaseId};
use penning_core::scan::{self, ScanConfig, StateCaps};
use std::hint::black_box;

fn jacobi_su211() {
    let set = catalog::catalog(CaseId::Su211);
    let report = catalog::graded_jacobi_check(&set).unwrap();
    assert_eq!(report.failures, 0);
    black_box(report.triples);
}

fn jacobi_osp26() {
    let set = catalog::catalog(CaseId::Osp26);
    let report = catalog::graded_jacobi_check(&set).unwrap();
    assert_eq!(report.failures, 0);
    black_box(report.triples);
}

fn numeric_cross_check() {
    let rows = catalog::verify_relations_numeric(CaseId::Su21, 6, 1e-12).unwrap();
    assert!(rows.iter().all(|r| r.pass));
    black_box(rows.len());
}

fn crossing_scan() {
    let mut config = ScanConfig::new(1.43, 3.0, 1200, 2.0 / 3.0);
    config.caps = StateCaps::figure2();
    let levels = scan::scan_levels(&config).unwrap();
    let crossings = scan::find_crossings(&config).unwrap();
    black_box((levels.sigmas.len(), crossings.len()));
}

#[cfg(feature = "parallel")]
fn bench_both(c: &mut Criterion, name: &str, samples: usize, work: fn()) {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("single-thread pool");
    let mut group = c.benchmark_group(name);
    group.sample_size(samples);
    group.bench_function("parallel", |b| b.iter(work));
    group.bench_function("single_thread", |b| b.iter(|| single.install(work)));
    group.finish();
}

#[cfg(not(feature = "parallel"))]
fn bench_both(c: &mut Criterion, name: &str, samples: usize, work: fn()) {
    let mut group = c.benchmark_group(name);
    group.sample_size(samples);
    group.bench_function("sequential", |b| b.iter(work));
    group.finish();
}

fn benches(c: &mut Criterion) {
    bench_both(c, "jacobi_su211", 20, jacobi_su211);
    bench_both(c, "jacobi_osp26", 10, jacobi_osp26);
    bench_both(c, "numeric_cross_check_su21_cutoff6", 20, numeric_cross_check);
    bench_both(c, "crossing_scan_figure2_grid1200", 20, crossing_scan);
}

criterion_group!(parallel_vs_sequential, benches);
criterion_main!(parallel_vs_sequential);
