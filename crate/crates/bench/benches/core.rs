use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dyckperm::{build, enumerate_prefixes, generate_class, phi, phi1_inverse, phi2_inverse, PatternBasis, SeriesName};

fn generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("generate_class");
    g.sample_size(10);
    for (label, basis) in [("t1", PatternBasis::t1()), ("t2", PatternBasis::t2())] {
        g.bench_function(format!("{label}/n=10"), |b| b.iter(|| generate_class(black_box(10), &basis).count()));
    }
    g.finish();
}

fn bijection(c: &mut Criterion) {
    let paths: Vec<_> = enumerate_prefixes(14).collect();
    c.bench_function("phi round trip/t1/n=8", |b| {
        b.iter(|| {
            for p in &paths {
                black_box(phi(&phi1_inverse(p).unwrap()).unwrap());
            }
        })
    });
    c.bench_function("phi round trip/t2/n=8", |b| {
        b.iter(|| {
            for p in &paths {
                black_box(phi(&phi2_inverse(p).unwrap()).unwrap());
            }
        })
    });
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    for name in [SeriesName::J, SeriesName::A, SeriesName::M] {
        g.bench_function(format!("{name}/x^12"), |b| b.iter(|| build(black_box(name), 12).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, generation, bijection, series);
criterion_main!(benches);
