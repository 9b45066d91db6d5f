use criterion::{black_box, criterion_group, criterion_main, Criterion};
use lumen_core::fields::GridSpec;
use lumen_core::{causality_scan, field, CouplingModel, FieldOptions, TransitionSpec};

fn bench_fields(c: &mut Criterion) {
    let tr = TransitionSpec::hydrogen_paper();
    let opts = FieldOptions::total();
    c.bench_function("field/ap-dip/point", |b| {
        b.iter(|| field(CouplingModel::ApDipole, black_box(&[0.3, 0.4, 1.2]), black_box(2.5), &tr, &opts).unwrap())
    });
    let grid = GridSpec::parse("r=0.01:10:100:log,t=0:20000:100").unwrap().build().unwrap();
    c.bench_function("causality_scan/1e4", |b| {
        b.iter(|| causality_scan(CouplingModel::ApDipole, &opts, &grid, &tr, 1e-9).unwrap())
    });
}

criterion_group!(benches, bench_fields);
criterion_main!(benches);
