use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nlgauge::fields::{build_field, Constants, ScenarioConfig, ScenarioKind};
use nlgauge::gauge_spacetime::{lambda_full, select_brackets_xyt, van_kampen_delta, FullVariant};
use nlgauge::gauge_static::{lambda1, select_brackets, ObservationRect};
use nlgauge::numerics::{integrate_1d, AxisRange, GridSpec, QuadratureMethod, QuadratureSpec};
use nlgauge::scenarios::{run_scenario, ScenarioRun};

fn gl() -> QuadratureSpec {
    QuadratureSpec::default().with_method(QuadratureMethod::CompositeGaussLegendre)
}

fn window(x: (f64, f64), y: (f64, f64)) -> GridSpec {
    GridSpec::new(vec![AxisRange::new(x.0, x.1, 5).unwrap(), AxisRange::new(y.0, y.1, 5).unwrap()])
        .unwrap()
}

fn quadrature(c: &mut Criterion) {
    let f = |x: f64| (3.0 * x).sin() * (-x * x).exp();
    for spec in [QuadratureSpec::default(), gl()] {
        c.bench_function(&format!("integrate_1d/{:?}", spec.method), |b| {
            b.iter(|| integrate_1d(f, black_box(-1.0), 2.0, &spec).unwrap())
        });
    }
}

fn solvers(c: &mut Criterion) {
    let spec = gl();
    let k = Constants::default();
    let disk = build_field(&ScenarioConfig::new(ScenarioKind::DiskB), k).unwrap();
    let base = [-2.0, -2.0];
    let brackets = select_brackets(&disk, &window((1.5, 2.5), (1.5, 2.5)), base, 0.0, &spec).unwrap();
    let rect = ObservationRect::new(base, [2.0, 2.1]).unwrap();
    c.bench_function("lambda1/disk", |b| {
        b.iter(|| lambda1(&disk, black_box(&rect), 0.0, &brackets, &spec).unwrap())
    });

    let strip = build_field(&ScenarioConfig::new(ScenarioKind::VerticalStripB), k).unwrap();
    let base3 = [3.0, 0.0, 0.0];
    let b3 = select_brackets_xyt(&strip, &window((-0.5, 0.5), (0.5, 1.5)), base3, &spec).unwrap();
    c.bench_function("lambda_full/fin/strip", |b| {
        b.iter(|| lambda_full(FullVariant::Fin, &strip, base3, black_box([0.0, 1.0, 0.7]), &b3, &spec).unwrap())
    });

    let vk = build_field(&ScenarioConfig::new(ScenarioKind::VanKampenFlux), k).unwrap();
    let loop_rect = ObservationRect::new([-1.0, -1.0], [1.0, 1.0]).unwrap();
    c.bench_function("van_kampen_delta", |b| {
        b.iter(|| van_kampen_delta(&vk, &loop_rect, 0.0, black_box(2.0), &spec).unwrap())
    });
}

fn scenarios(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_scenario");
    g.sample_size(10);
    for kind in [ScenarioKind::SolenoidAB, ScenarioKind::TriangleB] {
        let run = ScenarioRun::new(kind);
        g.bench_function(kind.id(), |b| b.iter(|| run_scenario(&run).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, quadrature, solvers, scenarios);
criterion_main!(benches);
