use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use expdioph_core::bounds::build_bound_set;
use expdioph_core::search::{partition_work, ModularSieve, WorkUnit};
use expdioph_core::{cmp_powersum, BigUint, Instance};

fn powersum(c: &mut Criterion) {
    let mut g = c.benchmark_group("cmp_powersum");
    for x in [31u32, 301, 3001] {
        // Near balance so the comparison cannot short-circuit on size.
        let (a, b, cc) = (BigUint::from(9u32), BigUint::from(4u32), BigUint::from(7u32));
        let z = (x as f64 * 9f64.ln() / 7f64.ln()).round() as u32;
        g.bench_with_input(BenchmarkId::from_parameter(x), &x, |bch, &x| {
            bch.iter(|| cmp_powersum(black_box(&a), x, &b, 2, &cc, z))
        });
    }
    g.finish();
}

fn sieve(c: &mut Criterion) {
    let inst = Instance::new(5, 3).unwrap();
    let s = ModularSieve::new(inst);
    c.bench_function("sieve_rejects", |bch| bch.iter(|| s.rejects(black_box(1001), 2, 1156)));
}

fn units(c: &mut Criterion) {
    let bounds = build_bound_set().unwrap();
    let mut g = c.benchmark_group("unit_scan");
    g.sample_size(10);
    for y in [2u32, 4, 8] {
        // The first unit has the smallest A and so the longest x window.
        let u: WorkUnit = partition_work(&bounds, y)[0];
        g.bench_function(format!("a{}_m{}_y{y}", u.a, u.m), |bch| bch.iter(|| black_box(u).scan()));
    }
    g.finish();
}

fn cascade(c: &mut Criterion) {
    c.bench_function("build_bound_set", |bch| bch.iter(build_bound_set));
    let bounds = build_bound_set().unwrap();
    c.bench_function("partition_work_y2", |bch| bch.iter(|| partition_work(&bounds, black_box(2))));
}

criterion_group!(benches, powersum, sieve, units, cascade);
criterion_main!(benches);
