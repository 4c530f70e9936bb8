//! Benchmarks for the data-parallel inner loops.
//!
//! Run `cargo bench` for the default (rayon) build and
//! `cargo bench --no-default-features` for the sequential fallback; the
//! bench IDs are identical, so criterion's saved baselines give the
//! comparison. The `exec_map` group additionally compares the dispatcher
//! against the always-sequential reference inside a single build.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use lieinvar_core::engine::{find_invariants, FindOptions};
use lieinvar_core::exec;
use lieinvar_core::lie::sl2_semidirect;
use lieinvar_core::oracle::max_flow_drift;
use lieinvar_core::poly::{parse_polynomial, Polynomial};
use lieinvar_core::reference::known_invariants;
use lieinvar_core::tde::jacobian_system;

fn bench_jacobi(c: &mut Criterion) {
    let algebra = sl2_semidirect(9);
    c.bench_function("jacobi/weight9", |b| {
        b.iter(|| black_box(algebra.jacobi_report().ok))
    });
}

fn bench_find_invariants(c: &mut Criterion) {
    let algebra = sl2_semidirect(4);
    c.bench_function("find_invariants/weight4_degree3", |b| {
        b.iter(|| {
            let set = find_invariants(&algebra, &FindOptions::new(3));
            black_box(set.len())
        })
    });
}

fn bench_integrability(c: &mut Criterion) {
    let system = jacobian_system(&sl2_semidirect(4));
    c.bench_function("integrability/weight4", |b| {
        b.iter(|| black_box(system.is_integrable()))
    });
}

fn bench_flow_batch(c: &mut Criterion) {
    let algebra = sl2_semidirect(2);
    let invariant = &known_invariants(2).unwrap()[1];
    let start = vec![0.3; algebra.dim()];
    c.bench_function("oracle/weight2_all_fields", |b| {
        b.iter(|| black_box(max_flow_drift(&algebra, invariant, &start, 1e-3, 1000).unwrap()))
    });
}

fn bench_exec_dispatch(c: &mut Criterion) {
    // A uniform batch of cube-and-expand jobs, heavy enough per item to
    // amortize the fork-join overhead.
    let ctx = sl2_semidirect(3).context();
    let base = parse_polynomial(&ctx, "2*v0*v2^3 - 9*v0*v1*v2*v3 + 27/2*v0^2*v3^2 + 2*v1^3*v3")
        .unwrap();
    let batch: Vec<Polynomial> = (0..64).map(|_| base.clone()).collect();
    let mut group = c.benchmark_group("exec_map");
    group.bench_function("dispatched", |b| {
        b.iter(|| {
            let out = exec::map_collect(batch.clone(), |p| p.pow(3));
            black_box(out.len())
        })
    });
    group.bench_function("sequential_reference", |b| {
        b.iter(|| {
            let out = exec::map_collect_seq(batch.clone(), |p| p.pow(3));
            black_box(out.len())
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_jacobi,
    bench_find_invariants,
    bench_integrability,
    bench_flow_batch,
    bench_exec_dispatch
);
criterion_main!(benches);
