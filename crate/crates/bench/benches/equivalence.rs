use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use expfam_core::random::{random_group_element, random_representation, random_theta};
use expfam_core::{act, graff_from_rep, log_partition, recover_witness, stabilizer_is_trivial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

const SIZES: [(usize, usize); 4] = [(4, 2), (8, 3), (32, 4), (100, 8)];

fn bench_recover_witness(c: &mut Criterion) {
    let mut group = c.benchmark_group("recover_witness");
    for (m, n) in SIZES {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rep_prime = random_representation(&mut rng, m, n).unwrap();
        let g = random_group_element(&mut rng, n).unwrap();
        let rep = act(&g, &rep_prime).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("m{m}_n{n}")),
            &(),
            |b, _| b.iter(|| recover_witness(black_box(&rep), black_box(&rep_prime)).unwrap()),
        );
    }
    group.finish();
}

fn bench_canonical_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("graff_from_rep");
    for (m, n) in SIZES {
        let rep = random_representation(&mut ChaCha8Rng::seed_from_u64(7), m, n).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("m{m}_n{n}")),
            &(),
            |b, _| b.iter(|| graff_from_rep(black_box(&rep)).unwrap()),
        );
    }
    group.finish();
}

fn bench_log_partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("log_partition");
    for (m, n) in SIZES {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rep = random_representation(&mut rng, m, n).unwrap();
        let theta = random_theta(&mut rng, n, 5.0);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("m{m}_n{n}")),
            &(),
            |b, _| b.iter(|| log_partition(black_box(&rep), black_box(&theta)).unwrap()),
        );
    }
    group.finish();
}

fn bench_stabilizer(c: &mut Criterion) {
    let rep = random_representation(&mut ChaCha8Rng::seed_from_u64(3), 16, 3).unwrap();
    c.bench_function("stabilizer_is_trivial/m16_n3", |b| {
        b.iter(|| stabilizer_is_trivial(black_box(&rep)))
    });
}

criterion_group!(
    benches,
    bench_recover_witness,
    bench_canonical_form,
    bench_log_partition,
    bench_stabilizer
);
criterion_main!(benches);
