use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ntk_core::free_product::{FreeNilpotentFactor, FreeProduct};
use ntk_core::group::{build_family, FamilySpec};
use ntk_core::harness::{build_default_corpus, run_all, HarnessConfig, PropositionId};
use ntk_core::magnus::{magnus_image, parse_word};
use ntk_core::nilk::{enumerate_subgroups, QTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn groups(c: &mut Criterion) {
    let s4 = build_family(&FamilySpec::Symmetric(4)).unwrap();
    let a5 = build_family(&FamilySpec::Alternating(5)).unwrap();
    c.bench_function("lattice S4", |b| {
        b.iter(|| enumerate_subgroups(black_box(&s4), usize::MAX).unwrap())
    });
    c.bench_function("lattice A5", |b| {
        b.iter(|| enumerate_subgroups(black_box(&a5), usize::MAX).unwrap())
    });
    c.bench_function("q table A5 k=2", |b| b.iter(|| QTable::new(black_box(&a5), 2)));
}

fn words(c: &mut Criterion) {
    let w = parse_word("[x1,x2,x3] (x1 x2^-1 x3)^4 [x2,x3]^-2").unwrap();
    c.bench_function("magnus m=3 k=4", |b| {
        b.iter(|| magnus_image(black_box(&w), 3, 4).unwrap())
    });

    let p = FreeProduct::copies(FreeNilpotentFactor::new(2, 2).unwrap(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs: Vec<_> = (0..64)
        .map(|_| (p.random_word(&mut rng, 12), p.random_word(&mut rng, 12)))
        .collect();
    c.bench_function("free product mul x64", |b| {
        b.iter(|| pairs.iter().map(|(u, v)| p.mul(u, v).len()).sum::<usize>())
    });
}

fn harness(c: &mut Criterion) {
    let corpus = build_default_corpus(24).unwrap();
    let mut g = c.benchmark_group("harness");
    g.sample_size(10);
    g.bench_function("order <= 24, k=1,2", |b| {
        b.iter(|| run_all(&corpus, &[1, 2], &PropositionId::ALL, HarnessConfig::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, groups, words, harness);
criterion_main!(benches);
