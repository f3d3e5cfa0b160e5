use std::hint::black_box;

use accentforge_bench::{random_frequencies, random_lexicon, random_pairs, random_word};
use accentforge_core::inventory::tier_assignment;
use accentforge_core::mining::{align, mine, MiningConfig};
use accentforge_core::{data, Phone, RuleQuery};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion, Throughput};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rewrite(c: &mut Criterion) {
    let table = data::symbol_table();
    let crs = data::default_rules(&table)
        .select(&RuleQuery::universal())
        .unwrap()
        .compile();
    let lex = random_lexicon(10_000, 1);
    let mut g = c.benchmark_group("rewrite");
    g.throughput(Throughput::Elements(lex.len() as u64));
    g.bench_function("adapt_10k", |b| b.iter(|| black_box(lex.adapt(&crs))));
    g.finish();
}

fn alignment(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pairs: Vec<_> = (0..1000)
        .map(|_| (random_word(&mut rng, 10), random_word(&mut rng, 10)))
        .collect();
    c.bench_function("align_1k_pairs", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(align(x, y));
            }
        })
    });
}

fn mining(c: &mut Criterion) {
    let table = data::symbol_table();
    let crs = data::default_rules(&table)
        .select(&RuleQuery::universal())
        .unwrap()
        .compile();
    let pairs = random_pairs(2000, &crs, 3);
    let config = MiningConfig {
        context_free: true,
        ..MiningConfig::default()
    };
    c.bench_function("mine_2k_pairs", |b| {
        b.iter(|| black_box(mine(&pairs, &config, &table).unwrap()))
    });
}

fn tiers(c: &mut Criterion) {
    c.bench_function("tiers_200", |b| {
        b.iter_batched(
            || {
                random_frequencies(200, 4)
                    .into_iter()
                    .enumerate()
                    .map(|(i, f)| (Phone::new(format!("p{i}")), f))
                    .collect()
            },
            |freqs| black_box(tier_assignment(&freqs, 18, 66.7, 33.3).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, rewrite, alignment, mining, tiers);
criterion_main!(benches);
