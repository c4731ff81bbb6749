use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stringy_core::analysis::{conjecture_report, product_stringy};
use stringy_core::random::{random_descriptor, RandomDescriptorParams};
use stringy_core::sncweights::SncComplexData;
use stringy_core::stringy::{stringy_e, stringy_hodge_table};
use stringy_core::{catalog, HodgeDiamond, ResolutionDescriptor};

fn corpus(count: usize) -> Vec<ResolutionDescriptor> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = RandomDescriptorParams::default();
    (0..count).map(|_| random_descriptor(&mut rng, &params)).collect()
}

fn burkhardt(c: &mut Criterion) {
    let x0 = catalog::burkhardt_x0();
    c.bench_function("burkhardt/stringy_e", |b| b.iter(|| stringy_e(black_box(&x0))));
    c.bench_function("burkhardt/hodge_table", |b| {
        b.iter(|| stringy_hodge_table(black_box(&x0), None))
    });
    c.bench_function("burkhardt_times_p1/report", |b| {
        b.iter(|| {
            let d = product_stringy(black_box(&x0), &HodgeDiamond::projective_space(1)).unwrap();
            conjecture_report(&d, None)
        })
    });
}

fn random_descriptors(c: &mut Criterion) {
    let ds = corpus(64);
    c.bench_function("random/stringy_e x64", |b| {
        b.iter(|| ds.iter().map(|d| stringy_e(black_box(d))).collect::<Vec<_>>())
    });
    c.bench_function("random/hodge_table x64", |b| {
        b.iter(|| {
            ds.iter()
                .map(|d| stringy_hodge_table(black_box(d), None).bound)
                .sum::<i64>()
        })
    });
    let deep = corpus(8);
    c.bench_function("random/hodge_table bound 16 x8", |b| {
        b.iter(|| {
            deep.iter()
                .map(|d| stringy_hodge_table(black_box(d), Some(16)).bound)
                .sum::<i64>()
        })
    });
}

/// Full 7-vertex complex truncated at triangles: a dense coboundary to rank.
fn snc_weights(c: &mut Criterion) {
    let mut simplices = Vec::new();
    for a in 1..=7u32 {
        simplices.push(vec![a]);
        for b in a + 1..=7 {
            simplices.push(vec![a, b]);
            for c in b + 1..=7 {
                simplices.push(vec![a, b, c]);
            }
        }
    }
    c.bench_function("snc/weight_zero 7 vertices", |b| {
        b.iter_batched(
            || {
                SncComplexData::from_dual_complex(&simplices, |ids| {
                    HodgeDiamond::projective_space(3 - ids.len() as u32)
                })
                .unwrap()
            },
            |data| {
                (0..data.depth())
                    .map(|l| data.weight_graded_dims(0, l, 0, 0).unwrap())
                    .sum::<u64>()
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, burkhardt, random_descriptors, snc_weights);
criterion_main!(benches);
