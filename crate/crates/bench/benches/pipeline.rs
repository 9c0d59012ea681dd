use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use heckeaf::{af_of_eigenform, bauer_factorize, companion_of_conjugates, jpa_expand};
use heckeaf_bench::{block_product, cubic_theta, newform, NEWFORM_23, NEWFORM_97};

fn bauer(c: &mut Criterion) {
    for len in [10, 40] {
        let (m, _) = block_product(len);
        c.bench_function(&format!("bauer_factorize/{len}"), |b| b.iter(|| bauer_factorize(black_box(&m)).unwrap()));
    }
}

fn jpa(c: &mut Criterion) {
    let (_field, e, theta) = cubic_theta();
    c.bench_function("jpa_expand/cubic_200", |b| b.iter(|| jpa_expand(black_box(&theta), &e, 200).unwrap()));
}

fn eigenform(c: &mut Criterion) {
    let f23 = newform(NEWFORM_23);
    let f97 = newform(NEWFORM_97);
    let mut g = c.benchmark_group("af_of_eigenform");
    g.sample_size(10);
    g.bench_function("23", |b| b.iter(|| af_of_eigenform(black_box(&f23)).unwrap()));
    g.bench_function("97", |b| b.iter(|| af_of_eigenform(black_box(&f97)).unwrap()));
    g.bench_function("97_conjugates", |b| b.iter(|| companion_of_conjugates(black_box(&f97)).unwrap()));
    g.finish();
}

criterion_group!(benches, bauer, jpa, eigenform);
criterion_main!(benches);
