use gfd::audit::ring_draws;
use gfd::operators::{gfd, named_derivative};
use gfd::ring::{check_leibniz, check_linearity, check_quotient, RING_TOLERANCE};
use gfd::solver::{solve_linear_closed, solve_linear_numeric, LinearFracODE};
use gfd::{parse, Alpha, EvalMethod, Expr, OperatorKind, Verdict, WeightSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXACT: EvalMethod = EvalMethod::ExactReduction;

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn order() -> impl Strategy<Value = Alpha> {
    (0.05..=1.0f64).prop_map(|a| Alpha::new(a).unwrap())
}

fn weight() -> impl Strategy<Value = WeightSpec> {
    prop::sample::select(vec!["one", "alpha", "power-t", "tau:alpha:2", "custom:1 + t/10"])
        .prop_map(|w| w.parse().unwrap())
}

fn smooth() -> impl Strategy<Value = Expr> {
    any::<u64>().prop_map(|seed| gfd::sample::smooth(&mut ChaCha8Rng::seed_from_u64(seed), "t", 3))
}

/// `c e^(k t) + t^p`, positive and increasing for `t > 0`.
fn increasing() -> impl Strategy<Value = Expr> {
    (0.1..3.0f64, 0.1..1.5f64, 0.5..3.0f64)
        .prop_map(|(c, k, p)| parse(&format!("{c} * exp({k} * t) + t^{p}")).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_and_limit_paths_agree(f in smooth(), alpha in order(), w in weight(), t in 0.5..5.0f64) {
        let exact = gfd(&f, alpha, &w, t, EXACT).unwrap();
        let limit = gfd(&f, alpha, &w, t, EvalMethod::limit(1e-5).unwrap()).unwrap();
        prop_assert!((exact - limit).abs() <= 1e-5 * (1.0 + exact.abs()), "{}: {} vs {}", f, exact, limit);
    }

    #[test]
    fn khalil_katugampola_and_unit_weight_coincide(f in smooth(), alpha in order(), t in 0.5..5.0f64) {
        let gfd_one = gfd(&f, alpha, &WeightSpec::One, t, EXACT).unwrap();
        for kind in [OperatorKind::Khalil, OperatorKind::Katugampola] {
            let d = named_derivative(&kind, &f, alpha, t, EXACT).unwrap();
            prop_assert!(rel(d, gfd_one) <= 1e-12);
            let lim = named_derivative(&kind, &f, alpha, t, EvalMethod::limit(1e-6).unwrap()).unwrap();
            prop_assert!((lim - gfd_one).abs() <= 1e-5 * (1.0 + gfd_one.abs()), "{}: {} vs {}", f, lim, gfd_one);
        }
    }

    #[test]
    fn guebbai_and_camrud_coincide(f in increasing(), alpha in order(), t in 0.5..5.0f64) {
        let value = f.eval_at("t", t).unwrap();
        let slope = f.derivative("t").eval_at("t", t).unwrap();
        let oracle = slope.powf(alpha.value()) * value.powf(1.0 - alpha.value());
        for method in [EXACT, EvalMethod::limit(1e-6).unwrap()] {
            let g = named_derivative(&OperatorKind::GuebbaiGhiat, &f, alpha, t, method).unwrap();
            let c = named_derivative(&OperatorKind::Camrud, &f, alpha, t, method).unwrap();
            let tol = if method == EXACT { 1e-12 } else { 1e-5 };
            prop_assert!(rel(g, oracle) <= tol && rel(c, oracle) <= tol, "{}: {} {} {}", f, g, c, oracle);
        }
    }

    #[test]
    fn unit_order_is_the_classical_derivative(f in smooth(), w in weight(), t in 0.5..5.0f64) {
        // Every preset except the custom one has w(t, 1) = 1.
        prop_assume!(!matches!(w, WeightSpec::Custom(_)));
        let d = gfd(&f, Alpha::new(1.0).unwrap(), &w, t, EXACT).unwrap();
        let classical = f.derivative("t").eval_at("t", t).unwrap();
        prop_assert!(rel(d, classical) <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ring_axioms_hold_on_random_instances(seed in any::<u64>()) {
        for d in ring_draws(seed, 5) {
            let reports = [
                check_linearity(&d.f, &d.g, d.a, d.b, d.alpha, &d.weight, &d.grid),
                check_leibniz(&d.f, &d.g, d.alpha, &d.weight, &d.grid),
                check_quotient(&d.f, &d.denominator, d.alpha, &d.weight, &d.grid),
            ];
            for r in reports {
                prop_assert_eq!(r.verdict, Verdict::Pass, "{} {}", r.inputs, r.max_rel_residual);
                prop_assert!(r.max_rel_residual <= RING_TOLERANCE);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn runge_kutta_tracks_closed_form(
        a in prop::sample::select(vec![0.5, 1.0, 2.0, -1.0]),
        b in -1.0..3.0f64,
        c in -2.0..4.0f64,
        alpha in (0.2..=1.0f64).prop_map(|a| Alpha::new(a).unwrap()),
        weight in 0.5..2.0f64,
        y0 in -1.0..2.0f64,
    ) {
        let ode = LinearFracODE::new(a, b, c, alpha, weight, 0.05, y0).unwrap();
        let closed = solve_linear_closed(&ode);
        let path = solve_linear_numeric(&ode, 2.0, 1e-3).unwrap();
        for (t, y) in path {
            let exact = closed.eval_at("t", t).unwrap();
            prop_assert!((y - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "t={} {} vs {}", t, y, exact);
        }
    }
}
