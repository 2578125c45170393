use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trusslab::corpus::{self, CorpusConfig, RingPool};
use trusslab::exact::lemmas::nine_lemma;
use trusslab::exact::snake::snake_all_absorbers;
use trusslab::exact::split::splitting;
use trusslab::heap::heap_of_group;
use trusslab::{enumerate_hom, FiniteGroup, DEFAULT_HOM_BUDGET};

fn config() -> CorpusConfig {
    CorpusConfig { rings: vec![2, 4], count: 8, ..CorpusConfig::default() }
}

fn heaps(c: &mut Criterion) {
    let mut group = c.benchmark_group("heap/validate");
    for (name, g) in [("S3", FiniteGroup::symmetric3()), ("Q8", FiniteGroup::quaternion()), ("Z12", FiniteGroup::cyclic(12))] {
        let h = heap_of_group(&g);
        group.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| b.iter(|| black_box(h.validate())));
    }
    group.finish();
}

fn hom(c: &mut Criterion) {
    let mut group = c.benchmark_group("hom/enumerate");
    for n in [2, 4, 6] {
        let pool = RingPool::new(n, 9).unwrap();
        let largest = pool.modules.iter().max_by_key(|m| m.size()).unwrap().clone();
        group.bench_function(BenchmarkId::new("Z", n), |b| {
            b.iter(|| enumerate_hom(&largest, &largest, DEFAULT_HOM_BUDGET).unwrap().len())
        });
    }
    group.finish();
}

fn lemmas(c: &mut Criterion) {
    let cfg = config();
    let snakes: Vec<_> = corpus::snakes(&cfg).unwrap().into_iter().map(|d| d.item.snake().unwrap()).collect();
    c.bench_function("snake/all-absorbers", |b| {
        b.iter(|| snakes.iter().map(|d| snake_all_absorbers(d).unwrap().stable).filter(|&s| s).count())
    });

    let grids: Vec<_> = corpus::grids(&cfg).unwrap().into_iter().map(|d| d.item.grid().unwrap()).collect();
    c.bench_function("nine", |b| b.iter(|| grids.iter().filter(|g| nine_lemma(g).is_ok()).count()));

    let sequences: Vec<_> = corpus::splits(&cfg).unwrap().into_iter().map(|d| d.item.ses().unwrap()).collect();
    c.bench_function("split", |b| {
        b.iter(|| sequences.iter().filter(|s| splitting(s, DEFAULT_HOM_BUDGET).unwrap().splits()).count())
    });
}

criterion_group!(benches, heaps, hom, lemmas);
criterion_main!(benches);
