//! Sequential against parallel scans. Build with `--no-default-features`
//! to drop rayon entirely; both groups then run on one thread.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fano14_core::fano_pair::{build_threefold, BuildOptions};
use fano14_core::linalg::Field;
use fano14_core::scan::{scan_w_and_x, scan_y, ScanOptions};

fn scans(c: &mut Criterion) {
    let pair = build_threefold(1, Field::Prime(7), &BuildOptions::default())
        .unwrap()
        .pair;
    let mut group = c.benchmark_group("scan_p7");
    group.sample_size(10);
    for (label, workers) in [("sequential", 1), ("parallel", 0)] {
        let opts = ScanOptions { workers };
        group.bench_with_input(BenchmarkId::new("w_and_x", label), &opts, |b, o| {
            b.iter(|| scan_w_and_x(&pair, o).unwrap().w.count)
        });
        group.bench_with_input(BenchmarkId::new("y", label), &opts, |b, o| {
            b.iter(|| scan_y(&pair, o).unwrap().report.count)
        });
    }
    group.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
