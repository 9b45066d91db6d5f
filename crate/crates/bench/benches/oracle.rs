use criterion::{criterion_group, criterion_main, Criterion};
use lumen_core::oracle::{reconstruct_field, simulate_modes, GridPreset, ModeGrid, ReconstructOptions, SimulationOptions};
use lumen_core::{CouplingModel, TransitionSpec};

fn bench_oracle(c: &mut Criterion) {
    let tr = TransitionSpec::hydrogen_paper();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("reconstruct/point", |b| {
        b.iter(|| reconstruct_field(&tr, CouplingModel::ApDipole, &[1.2, 0.0, 1.6], 4.0, &ReconstructOptions::default()).unwrap())
    });
    let gamma = tr.gamma_internal();
    let t_max = 3.0 / gamma;
    let grid = ModeGrid::preset(GridPreset::Coarse, gamma, t_max).unwrap();
    group.bench_function("decay/coarse", |b| {
        b.iter(|| {
            simulate_modes(CouplingModel::ApDipole, &grid, &tr, &SimulationOptions { t_max, tol: 1e-8, samples: 31 }).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_oracle);
criterion_main!(benches);
