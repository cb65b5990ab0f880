use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use grw::sweep::{self, Mode, SweepConfig};
use grw::theorems::CheckKind;
use grw::weights::{d_hierarchy, InnerMax};
use grw::{zoo, Execution, FieldTower, Settings};

fn settings(exec: Execution) -> Settings {
    Settings { exec, ..Settings::default() }
}

fn modes() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("sequential", Execution::Sequential)];
    if Execution::default().is_parallel() {
        v.push(("parallel", Execution::Parallel));
    }
    v
}

fn exhaustive_sweep(c: &mut Criterion) {
    let tower = FieldTower::with_defaults(2, 1, 3).unwrap();
    let mut group = c.benchmark_group("sweep_q2_m3_n2");
    group.sample_size(10);
    for (name, exec) in modes() {
        let cfg = SweepConfig {
            tower: tower.clone(),
            n: 2,
            k: None,
            mode: Mode::Exhaustive,
            checks: CheckKind::ALL.to_vec(),
            settings: settings(exec),
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| sweep::run(&cfg).unwrap()));
    }
    group.finish();
}

fn min_rank_distance(c: &mut Criterion) {
    let tower = FieldTower::with_defaults(2, 1, 4).unwrap();
    let code = zoo::gabidulin_code(&tower, 4, 3).unwrap();
    let mut group = c.benchmark_group("min_rank_distance_gabidulin_4_3");
    for (name, exec) in modes() {
        let s = settings(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| code.min_rank_distance(&s).unwrap()));
    }
    group.finish();
}

fn subcode_weights(c: &mut Criterion) {
    let tower = FieldTower::with_defaults(2, 1, 4).unwrap();
    let code = zoo::gabidulin_code(&tower, 4, 2).unwrap();
    let mut group = c.benchmark_group("subcode_hierarchy_gabidulin_4_2");
    group.sample_size(10);
    for (name, exec) in modes() {
        let s = settings(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| d_hierarchy(&code, InnerMax::Auto, &s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exhaustive_sweep, min_rank_distance, subcode_weights);
criterion_main!(benches);
