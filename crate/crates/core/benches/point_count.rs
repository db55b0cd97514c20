use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zetalab::curve::{count_points_with, parse_curve};
use zetalab::par::Execution;

const CURVES: [(&str, &str, u32); 3] = [
    ("elliptic_f2", "[curve]\nmodel = \"elliptic\"\np = 2\nh = [1]\nf = [0, 0, 0, 1]\n", 16),
    ("elliptic_f3", "[curve]\nmodel = \"elliptic\"\np = 3\nf = [1, 0, 2, 1]\n", 10),
    ("genus2_f5", "[curve]\nmodel = \"hyperelliptic\"\np = 5\nf = [0, -1, 0, 0, 0, 1]\n", 7),
];

fn point_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("point_count");
    group.sample_size(10);
    for (name, text, m) in CURVES {
        let curve = parse_curve(text).unwrap();
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, format!("{name} m={m}")), &m, |b, &m| {
                b.iter(|| count_points_with(black_box(&curve), m, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, point_count);
criterion_main!(benches);
