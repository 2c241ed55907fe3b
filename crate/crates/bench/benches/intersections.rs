use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dsrecon_bench::pairs;
use dsrecon_core::balls::{enum_ds_ball, BallSpec};
use dsrecon_core::bounds::extremal_pair;
use dsrecon_core::cells::{brute_intersection, ds12_intersection_via_cells, sub2_intersection_structural};
use dsrecon_core::recon::{even_weight_code, read_coverage, CoverageMode};
use dsrecon_core::enum_sub_ball;

fn ds12_intersection(c: &mut Criterion) {
    let mut group = c.benchmark_group("ds12_intersection");
    for n in [12usize, 16, 20] {
        let (x, y) = extremal_pair(2, n).unwrap();
        group.bench_with_input(BenchmarkId::new("brute", n), &(&x, &y), |b, (x, y)| {
            b.iter(|| brute_intersection(black_box(x), black_box(y), BallSpec::DS12).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("cells", n), &(&x, &y), |b, (x, y)| {
            b.iter(|| ds12_intersection_via_cells(black_box(x), black_box(y)).unwrap())
        });
    }
    group.finish();
}

fn sub2_intersection(c: &mut Criterion) {
    let mut group = c.benchmark_group("sub2_intersection");
    for d in 1..=4 {
        let batch = pairs(3, 10, d, 16);
        group.bench_with_input(BenchmarkId::new("scan_balls", d), &batch, |b, batch| {
            b.iter(|| {
                for (u, v) in batch {
                    let bu = enum_sub_ball(u, 2).unwrap();
                    black_box(bu.intersection(&enum_sub_ball(v, 2).unwrap()));
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("structural", d), &batch, |b, batch| {
            b.iter(|| {
                for (u, v) in batch {
                    black_box(sub2_intersection_structural(u, v).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn balls_and_coverage(c: &mut Criterion) {
    let (x, _) = extremal_pair(3, 12).unwrap();
    c.bench_function("ds12_ball_q3_n12", |b| b.iter(|| enum_ds_ball(black_box(&x), BallSpec::DS12).unwrap()));
    let code = even_weight_code(8).unwrap();
    let mut group = c.benchmark_group("coverage");
    group.sample_size(10);
    group.bench_function("even_weight_n8", |b| b.iter(|| read_coverage(&code, CoverageMode::Exhaustive).unwrap()));
    group.finish();
}

criterion_group!(benches, ds12_intersection, sub2_intersection, balls_and_coverage);
criterion_main!(benches);
