//! Parallel core against a one-thread pool on the same inputs. Built with
//! `--no-default-features` the same benches time the sequential fallback.

use std::sync::Arc;

use coquasi::cqbialg::chi_s_formula;
use coquasi::radford::Radford;
use coquasi::zoo;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn modes() -> Vec<(&'static str, Option<rayon::ThreadPool>)> {
    if !coquasi::par::is_parallel() {
        return vec![("sequential", None)];
    }
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    vec![("one_thread", Some(one)), ("parallel", None)]
}

fn in_mode<T>(pool: &Option<rayon::ThreadPool>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn benches(c: &mut Criterion) {
    let taft = zoo::standard().unwrap().into_iter().find(|h| h.name() == "Taft3").unwrap();
    let h4 = Arc::new(zoo::sweedler_h4(coquasi::linalg::Field::Rational).unwrap());
    let mut g = c.benchmark_group("taft3");
    g.sample_size(10);
    for (name, pool) in modes() {
        g.bench_with_input(BenchmarkId::new("axioms", name), &taft, |b, h| b.iter(|| in_mode(&pool, || h.check())));
        g.bench_with_input(BenchmarkId::new("antipode", name), &taft, |b, h| b.iter(|| in_mode(&pool, || h.check_antipode())));
        g.bench_with_input(BenchmarkId::new("chi_s_formula", name), &taft, |b, h| {
            b.iter(|| in_mode(&pool, || chi_s_formula(h).unwrap()))
        });
    }
    g.finish();
    let mut g = c.benchmark_group("h4");
    g.sample_size(10);
    for (name, pool) in modes() {
        g.bench_with_input(BenchmarkId::new("certificate", name), &h4, |b, h| {
            b.iter(|| in_mode(&pool, || Radford::new(h).unwrap().certificate().unwrap()))
        });
    }
    g.finish();
}

criterion_group!(all, benches);
criterion_main!(all);
