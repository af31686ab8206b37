use criterion::{black_box, criterion_group, criterion_main, Criterion};

use invsmooth::elliptic::EndomorphismElement;
use invsmooth::galois::{build_kummer_with, build_torus_with};
use invsmooth::index_calculus::{compute_log_table, trial_rng, FactorBase, PipelineConfig};
use invsmooth::sieve2d::{ee_setup, linear_system_ee, jl_setup, jl_sieve, NSClassEE};
use invsmooth::{factor, Poly};

fn arithmetic(c: &mut Criterion) {
    let kummer = build_kummer_with(43, 6, 3).unwrap();
    let ring = kummer.ring();
    let z = ring.random(&mut trial_rng(1, 0));
    c.bench_function("residue pow 43^6", |b| b.iter(|| invsmooth::Field::pow(&ring, black_box(&z), 1_000_003)));
    let f = Poly::new(43, (0..25u64).map(|i| (i * i + 7) % 43).collect());
    c.bench_function("factor degree 24 over F_43", |b| b.iter(|| factor(black_box(&f))));
}

fn orbits(c: &mut Criterion) {
    let kummer = build_kummer_with(43, 6, 3).unwrap();
    c.bench_function("Kummer factor base kappa 2", |b| b.iter(|| FactorBase::build(black_box(&kummer), 2).unwrap()));
}

fn logs(c: &mut Criterion) {
    let mut g = c.benchmark_group("log tables");
    g.sample_size(10);
    let kummer = build_kummer_with(43, 6, 3).unwrap();
    let torus = build_torus_with(13, 7, 2, 8).unwrap();
    g.bench_function("Kummer 43^6", |b| b.iter(|| compute_log_table(&kummer, &PipelineConfig::new(2, 1)).unwrap()));
    g.bench_function("torus 13^7", |b| b.iter(|| compute_log_table(&torus, &PipelineConfig::new(2, 1)).unwrap()));
    g.finish();
}

fn sieves(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieves");
    g.sample_size(10);
    let s = jl_setup(43, 3, 2, 6, 1, 100_000).unwrap();
    g.bench_function("JL 43^6, 200 trials", |b| b.iter(|| jl_sieve(&s, 1, 1, 2, 200, 3, 1).unwrap()));
    let e = ee_setup(11, 7).unwrap();
    let class = NSClassEE::new(3, 3, EndomorphismElement::new(-2, 1, e.curve().trace(), 11));
    g.bench_function("E x E linear system", |b| b.iter(|| linear_system_ee(&e, &class).unwrap()));
    g.finish();
}

criterion_group!(benches, arithmetic, orbits, logs, sieves);
criterion_main!(benches);
