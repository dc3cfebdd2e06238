use std::hint::black_box;

use clusterfold::explorer::report::TypeSetup;
use clusterfold::explorer::{check_independence, enumerate, EnumerateOptions, Mutator};
use clusterfold::fold::check_consistency_batch;
use clusterfold::seed::initial_seed;
use clusterfold::weyl::longest_word;
use clusterfold::{CartanMatrix, Parallelism, Seed};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn word_seed(t: &str) -> Seed {
    let c = CartanMatrix::from_type(t.parse().unwrap());
    initial_seed(&c, &longest_word(&c)).unwrap()
}

fn bench_enumerate(c: &mut Criterion) {
    let seed = word_seed("A4");
    let mut group = c.benchmark_group("enumerate_a4");
    group.sample_size(10);
    for (name, parallelism) in MODES {
        let opts = EnumerateOptions {
            parallelism,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate(black_box(&seed), Mutator::Ordinary, opts).unwrap())
        });
    }
    group.finish();
}

fn bench_independence(c: &mut Criterion) {
    let graph = enumerate(&word_seed("A4"), Mutator::Ordinary, EnumerateOptions::default()).unwrap();
    let mut group = c.benchmark_group("independence_a4_degree2");
    group.sample_size(10);
    for (name, parallelism) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_independence(black_box(&graph), 2, parallelism).unwrap())
        });
    }
    group.finish();
}

fn bench_consistency(c: &mut Criterion) {
    let setup = TypeSetup::new("G2".parse().unwrap(), None).unwrap();
    let blocks = setup.seed_folding.mutable_blocks(&setup.unfolded);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sequences: Vec<Vec<usize>> = (0..64)
        .map(|_| (0..rng.gen_range(1..=5)).map(|_| *blocks.choose(&mut rng).unwrap()).collect())
        .collect();
    let sf = setup.seed_folding.clone().with_order_check(false);
    let mut group = c.benchmark_group("consistency_g2_batch");
    group.sample_size(10);
    for (name, parallelism) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_consistency_batch(black_box(&setup.unfolded), &sf, &sequences, parallelism).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_enumerate, bench_independence, bench_consistency);
criterion_main!(benches);
