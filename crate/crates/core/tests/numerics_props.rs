use nlgauge::numerics::{
    central_diff, integrate_1d, line_integral, FdSpec, QuadratureMethod, QuadratureSpec,
};
use proptest::prelude::*;

fn specs() -> [QuadratureSpec; 2] {
    let s = QuadratureSpec::default();
    [s, s.with_method(QuadratureMethod::CompositeGaussLegendre)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cubics_integrate_exactly(
        c in prop::array::uniform4(-3.0f64..3.0),
        a in -2.0f64..2.0,
        len in 0.1f64..3.0,
    ) {
        let b = a + len;
        let f = |x: f64| c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x;
        let anti = |x: f64| c[0] * x + c[1] * x * x / 2.0 + c[2] * x.powi(3) / 3.0 + c[3] * x.powi(4) / 4.0;
        let exact = anti(b) - anti(a);
        for spec in specs() {
            let v = integrate_1d(f, a, b, &spec).unwrap();
            prop_assert!((v - exact).abs() <= 1e-12 * (1.0 + exact.abs()), "{v} vs {exact}");
        }
    }

    #[test]
    fn intervals_add(a in -2.0f64..0.0, m in 0.0f64..1.0, b in 1.0f64..3.0, k in 0.5f64..4.0) {
        let f = |x: f64| (k * x).sin() * (-0.3 * x * x).exp();
        for spec in specs() {
            let whole = integrate_1d(f, a, b, &spec).unwrap();
            let parts = integrate_1d(f, a, m, &spec).unwrap() + integrate_1d(f, m, b, &spec).unwrap();
            prop_assert!((whole - parts).abs() <= 3.0 * spec.tolerance(whole));
        }
    }

    #[test]
    fn gradient_loop_vanishes(
        x0 in -2.0f64..2.0, y0 in -2.0f64..2.0,
        w in 0.1f64..2.0, h in 0.1f64..2.0,
        kx in 0.5f64..3.0, ky in 0.5f64..3.0,
    ) {
        // chi = sin(kx x) cos(ky y) + x y
        let grad = |x: f64, y: f64| [
            kx * (kx * x).cos() * (ky * y).cos() + y,
            -ky * (kx * x).sin() * (ky * y).sin() + x,
        ];
        let path = [[x0, y0], [x0 + w, y0], [x0 + w, y0 + h], [x0, y0 + h], [x0, y0]];
        for spec in specs() {
            let v = line_integral(grad, &path, &spec).unwrap();
            prop_assert!(v.abs() <= 1e-8, "{v}");
        }
    }

    #[test]
    fn central_difference_is_second_order(x in -2.0f64..2.0, k in 0.5f64..2.0) {
        let f = |p: &[f64]| (k * p[0]).sin();
        let exact = k * (k * x).cos();
        let fd = FdSpec::new(1e-2).unwrap();
        let e1 = (central_diff(f, &[x], 0, &fd) - exact).abs();
        let e2 = (central_diff(f, &[x], 0, &fd.halved()) - exact).abs();
        // Skip points where the leading error term nearly vanishes.
        prop_assume!(e1 > 1e-9);
        prop_assert!((e1 / e2 - 4.0).abs() < 0.2, "ratio {}", e1 / e2);
    }
}
