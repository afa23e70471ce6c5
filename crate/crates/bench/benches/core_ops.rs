use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use foldcx::budget::Budgets;
use foldcx::topology::homology;
use foldcx::verify::{enumerate_immersions, EnumerationFilter};
use foldcx::{build_c, build_d, canonical_form, couple, fold, Variant};
use foldcx_bench::polygon_bouquet;

fn folding(c: &mut Criterion) {
    let mut g = c.benchmark_group("fold");
    for n in [4, 16, 64] {
        let m = polygon_bouquet(n);
        g.bench_with_input(BenchmarkId::new("bouquet", n), &m, |b, m| {
            b.iter(|| fold(black_box(m)).unwrap())
        });
    }
    for i in [8, 32] {
        let d = build_d(i, Variant::Standard);
        let bi = d.domain.edge_index(&format!("b{i}")).expect("family edge");
        g.bench_with_input(BenchmarkId::new("couple_d", i), &d, |b, d| {
            b.iter(|| couple(black_box(d), 1, 0, bi).unwrap())
        });
    }
    g.finish();
}

fn canonical(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_form");
    for i in [9, 33, 99] {
        let m = build_c(i, Variant::Tilde).unwrap();
        g.bench_with_input(BenchmarkId::new("ct", i), &m, |b, m| {
            b.iter(|| canonical_form(black_box(m)))
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10);
    for n in [3, 4] {
        let filter = EnumerationFilter::closed(n, &[0, 1]);
        g.bench_with_input(BenchmarkId::new("closed_both_types", n), &filter, |b, f| {
            b.iter(|| enumerate_immersions(black_box(f), &Budgets::default()).unwrap())
        });
    }
    g.finish();
}

fn homology_bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    for i in [9, 33, 99] {
        let m = build_c(i, Variant::Standard).unwrap();
        g.bench_with_input(BenchmarkId::new("c", i), &m.domain, |b, x| {
            b.iter(|| homology(black_box(x)))
        });
    }
    g.finish();
}

criterion_group!(benches, folding, canonical, enumeration, homology_bench);
criterion_main!(benches);
