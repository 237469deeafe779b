use nlgauge::fields::{build_field, Constants, FieldDifference, PureGauge, ScenarioConfig, ScenarioKind};
use nlgauge::gauge_spacetime::van_kampen_delta;
use nlgauge::gauge_static::{lambda1, lambda2, select_brackets, ObservationRect};
use nlgauge::numerics::{AxisRange, GridSpec, QuadratureMethod, QuadratureSpec};
use proptest::prelude::*;

fn gl() -> QuadratureSpec {
    QuadratureSpec::default().with_method(QuadratureMethod::CompositeGaussLegendre)
}

fn field(kind: ScenarioKind, params: &[(&str, f64)]) -> FieldDifference {
    let mut cfg = ScenarioConfig::new(kind);
    for &(k, v) in params {
        cfg.set(k, v).unwrap();
    }
    build_field(&cfg, Constants::default()).unwrap()
}

fn window(x: (f64, f64), y: (f64, f64)) -> GridSpec {
    GridSpec::new(vec![AxisRange::new(x.0, x.1, 5).unwrap(), AxisRange::new(y.0, y.1, 5).unwrap()])
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Under A → A + ∇χ the solution shifts by χ(x, y) − χ(x₀, y₀); B, and
    /// with it every nonlocal and bracket term, is untouched.
    #[test]
    fn lambda1_is_gauge_covariant(amp in -1.0f64..1.0, x in 3.0f64..4.0, y in 0.5f64..1.5) {
        let spec = gl();
        let f = field(ScenarioKind::VerticalStripB, &[]);
        let chi = PureGauge::harmonic(amp);
        let g = f.dressed(chi);
        let base = [0.0, 0.0];
        let w = window((2.5, 3.5), (0.5, 1.5));
        let bf = select_brackets(&f, &w, base, 0.0, &spec).unwrap();
        let bg = select_brackets(&g, &w, base, 0.0, &spec).unwrap();
        let r = ObservationRect::new(base, [x, y]).unwrap();
        let shift = lambda1(&g, &r, 0.0, &bg, &spec).unwrap().total - lambda1(&f, &r, 0.0, &bf, &spec).unwrap().total;
        let oracle = chi.chi(x, y, 0.0) - chi.chi(0.0, 0.0, 0.0);
        prop_assert!((shift - oracle).abs() < 1e-8, "{shift} vs {oracle}");
    }

    #[test]
    fn strip_solutions_agree_at_random_points(x in 3.0f64..5.0, y in 0.2f64..2.0, b0 in -2.0f64..2.0) {
        let spec = gl();
        let f = field(ScenarioKind::VerticalStripB, &[("b0", b0)]);
        let base = [0.0, 0.0];
        let b = select_brackets(&f, &window((2.5, 3.5), (0.5, 1.5)), base, 0.0, &spec).unwrap();
        let r = ObservationRect::new(base, [x, y]).unwrap();
        let d = lambda1(&f, &r, 0.0, &b, &spec).unwrap().total - lambda2(&f, &r, 0.0, &b, &spec).unwrap().total;
        prop_assert!(d.abs() <= 2e-9, "{d}");
    }

    /// ∮A(t) = Φ(t) by Stokes and c∫∮E dt′ = Φ(t₀) − Φ(t) by Faraday, so the
    /// sum is Φ(t₀) for any profile, time and gauge.
    #[test]
    fn van_kampen_recovers_the_reference_flux(
        profile in 0usize..3,
        t0 in -1.0f64..1.0,
        dt in 0.1f64..5.0,
        amp in -1.0f64..1.0,
    ) {
        let spec = gl();
        let f = field(ScenarioKind::VanKampenFlux, &[("profile", profile as f64), ("t0", t0)]);
        let phi = |t: f64| match profile {
            0 => 1.0,
            1 => 1.0 * (1.0 + 0.5 * (t - t0)),
            _ => 1.0 + 0.5 * (2.0 * (t - t0)).sin(),
        };
        let rect = ObservationRect::new([-1.0, -1.0], [1.0, 1.0]).unwrap();
        let d = van_kampen_delta(&f, &rect, t0, t0 + dt, &spec).unwrap();
        prop_assert!((d - phi(t0)).abs() <= 1e-6, "{d} vs {}", phi(t0));
        let dressed = f.dressed(PureGauge::harmonic(amp));
        let dd = van_kampen_delta(&dressed, &rect, t0, t0 + dt, &spec).unwrap();
        prop_assert!((dd - d).abs() <= 1e-8);
    }
}

#[test]
fn van_kampen_loop_missing_the_flux_sees_nothing() {
    let f = field(ScenarioKind::VanKampenFlux, &[]);
    let rect = ObservationRect::new([0.5, 0.5], [1.5, 1.5]).unwrap();
    let d = van_kampen_delta(&f, &rect, 0.0, 2.0, &gl()).unwrap();
    assert!(d.abs() < 1e-9, "{d}");
}
