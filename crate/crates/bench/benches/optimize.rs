use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hvcheck::nonlocality::{chsh_optimize, hardy_optimize, singlet_state};
use hvcheck::simlab::{simulate_chsh, ExperimentConfig};

fn optimize(c: &mut Criterion) {
    let psi = singlet_state();
    let mut g = c.benchmark_group("optimize");
    g.sample_size(10);
    g.bench_function("chsh_singlet_20_restarts", |b| {
        b.iter(|| chsh_optimize(black_box(&psi), 20, 1e-6, 0))
    });
    g.bench_function("hardy_grid_100", |b| b.iter(|| hardy_optimize(black_box(100), 1e-8)));
    g.finish();

    let mut g = c.benchmark_group("simulate");
    g.sample_size(10);
    for workers in [1, 4] {
        let cfg = ExperimentConfig {
            n_pairs: 1_000_000,
            workers,
            ..Default::default()
        };
        g.bench_function(format!("singlet_1e6_pairs_{workers}_workers"), |b| {
            b.iter(|| simulate_chsh(black_box(&cfg)))
        });
    }
    g.finish();
}

criterion_group!(benches, optimize);
criterion_main!(benches);
