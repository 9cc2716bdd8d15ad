use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use gop_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn ore(c: &mut Criterion) {
    let mut g = ChaCha8Rng::seed_from_u64(1);
    let a = sample::diffop(&mut g, 3, 3);
    let b = sample::diffop(&mut g, 2, 3);
    c.bench_function("op_mul order 3 x 2", |bn| {
        bn.iter(|| op_mul(black_box(&a), black_box(&b)))
    });
    let l = op_mul(&a, &b);
    c.bench_function("op_rdiv order 5 / 2", |bn| {
        bn.iter(|| op_rdiv(black_box(&l), black_box(&b)))
    });
}

fn polys(c: &mut Criterion) {
    let mut g = ChaCha8Rng::seed_from_u64(2);
    let f = sample::nonzero_poly(&mut g, 6);
    let p = &(&f * &sample::nonzero_poly(&mut g, 8)) * &sample::nonzero_poly(&mut g, 4);
    let q = &f * &sample::nonzero_poly(&mut g, 8);
    c.bench_function("poly gcd degree 18 / 14", |bn| {
        bn.iter(|| black_box(&p).gcd(black_box(&q)))
    });
    c.bench_function("poly_factor degree 18", |bn| {
        bn.iter(|| poly_factor(black_box(&p)))
    });
}

fn galochkin(c: &mut Criterion) {
    let data = [
        (int(0), rat(1, 2)),
        (int(1), rat(-1, 3)),
        (int(-2), rat(3, 4)),
    ];
    let sys = scalar_system(&data);
    c.bench_function("denominator_sequence k = 30", |bn| {
        bn.iter(|| denominator_sequence(black_box(&sys), 30))
    });
}

fn kovacic(c: &mut Criterion) {
    for (name, l) in sample::corpus() {
        if l.order() != 2 {
            continue;
        }
        c.bench_function(&format!("classify_theorem2 {name}"), |bn| {
            bn.iter(|| classify_theorem2(black_box(&l)))
        });
    }
}

fn nga(c: &mut Criterion) {
    let mut g = ChaCha8Rng::seed_from_u64(8);
    c.bench_function("holonomy_split 4 terms x 40", |bn| {
        bn.iter_batched(
            || sample::nga_expr(&mut g, 4, 40),
            |e| holonomy_split(&e),
            BatchSize::SmallInput,
        )
    });
    let s = TruncSeries::from_ratfunc(
        &RatFunc::new(Poly::from_ints(&[1, 3]), Poly::from_ints(&[1, -2, 5])),
        40,
    );
    c.bench_function("guess_ode order 2 degree 2", |bn| {
        bn.iter(|| guess_ode(black_box(&s), 2, 2, 10))
    });
}

criterion_group!(benches, ore, polys, galochkin, kovacic, nga);
criterion_main!(benches);
