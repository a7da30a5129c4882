use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use bms_core::characters::submodule_dims;
use bms_core::liealg::{AlgebraMode, Generator};
use bms_core::pbw::level_basis;
use bms_core::singular::{build_s, singular_space};
use bms_core::subsingular::{atypical_context, build_t_pr};
use bms_core::vector::ModuleVector;
use bms_core::verma::{VermaConfig, VermaModule};
use bms_core::{par, Scalar};

fn paths() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn dense_vector(level2: i32) -> ModuleVector {
    let mut v = ModuleVector::zero(level2);
    for (i, m) in level_basis(level2, AlgebraMode::Full).iter().enumerate() {
        v.add_term(m.clone(), Scalar::from_int(i as i64 + 1));
    }
    v
}

fn action(c: &mut Criterion) {
    let mut g = c.benchmark_group("action");
    let v = dense_vector(14);
    for (name, on) in paths() {
        g.bench_function(BenchmarkId::new(name, "L2 on level 7"), |b| {
            par::set_parallel(on);
            b.iter(|| {
                // fresh module so the per-module cache does not hide the work
                let vm = VermaModule::new(VermaConfig::generic(AlgebraMode::Full)).unwrap();
                black_box(vm.act(Generator::l(2), &v).unwrap())
            })
        });
    }
    g.finish();
}

fn kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel");
    g.sample_size(10);
    for (name, on) in paths() {
        g.bench_function(BenchmarkId::new(name, "singular p=3 level2=12"), |b| {
            par::set_parallel(on);
            b.iter(|| {
                let vm = VermaModule::new(VermaConfig::reducible(3, AlgebraMode::Full).unwrap())
                    .unwrap();
                black_box(singular_space(12, &vm).unwrap().space.dim())
            })
        });
        g.bench_function(BenchmarkId::new(name, "T_{2,2}"), |b| {
            par::set_parallel(on);
            b.iter(|| {
                let ctx = atypical_context(2, 2, AlgebraMode::Full).unwrap();
                black_box(build_t_pr(2, 2, &ctx).unwrap())
            })
        });
    }
    g.finish();
}

fn submodules(c: &mut Criterion) {
    let mut g = c.benchmark_group("submodule");
    g.sample_size(10);
    let cfg = VermaConfig::reducible_at(
        2,
        AlgebraMode::Full,
        Scalar::from_int(7),
        Scalar::from_int(2),
        Scalar::rational(3, 11),
    )
    .unwrap();
    let s = build_s(2, &cfg).unwrap();
    for (name, on) in paths() {
        g.bench_function(BenchmarkId::new(name, "<S> up to level2=14"), |b| {
            par::set_parallel(on);
            b.iter(|| {
                let vm = VermaModule::new(cfg.clone()).unwrap();
                black_box(submodule_dims(&vm, std::slice::from_ref(&s), 14).unwrap())
            })
        });
    }
    g.finish();
    par::set_parallel(true);
}

criterion_group!(benches, action, kernels, submodules);
criterion_main!(benches);
