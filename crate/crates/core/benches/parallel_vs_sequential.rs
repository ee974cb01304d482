use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jacobi_spectral::exec::map_slice;
use jacobi_spectral::inverse::{brute_force_isospectral_search, verify_amb_dirichlet, OracleConfig, ScanGrid};
use jacobi_spectral::spectra::eigenvalues_jacobi_with;
use jacobi_spectral::{Execution, JacobiMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("free_eigenvalues");
    group.sample_size(10);
    for n in [256usize, 1024] {
        let m = JacobiMatrix::free(n).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &m, |bench, m| {
                bench.iter(|| eigenvalues_jacobi_with(black_box(m), 1e-12, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn grid_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_grid_scan");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let cfg = OracleConfig {
            grid: ScanGrid::new(-3.0, 3.0, 0.05).unwrap(),
            exec,
            ..OracleConfig::new(5)
        };
        group.bench_function(name, |bench| {
            bench.iter(|| brute_force_isospectral_search(black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let instances: Vec<Vec<f64>> = (0..256)
        .map(|_| (0..40).map(|_| rng.gen_range(-3.0..3.0)).collect())
        .collect();
    let mut group = c.benchmark_group("dirichlet_batch");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |bench| {
            bench.iter(|| {
                map_slice(exec, black_box(&instances), |b| {
                    verify_amb_dirichlet(b, 1e-9).unwrap().verdict
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, eigenvalues, grid_scan, batch);
criterion_main!(benches);
