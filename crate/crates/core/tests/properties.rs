use atddg_core::frame::{self, RealisticScenario};
use atddg_core::game::{self, Outcome};
use atddg_core::{apollonius, quartic, region, sim, Point, ReducedState};
use proptest::prelude::*;

/// `(x_A, x_T, y_T, alpha)` with `x_T > 0` and `alpha_bar < alpha < 1`.
fn escape_state() -> impl Strategy<Value = ReducedState> {
    (0.1f64..100.0, 0.1f64..100.0, 0.1f64..100.0, 0.001f64..0.999).prop_map(|(x_a, x_t, y_t, u)| {
        let probe = ReducedState::new(x_a, x_t, y_t, 0.5).unwrap();
        let alpha_bar = game::critical_speed_ratio(&probe);
        ReducedState::new(x_a, x_t, y_t, alpha_bar + (1.0 - alpha_bar) * u).unwrap()
    })
}

fn any_state() -> impl Strategy<Value = ReducedState> {
    (0.1f64..100.0, -100.0f64..100.0, 0.0f64..100.0, 0.01f64..0.99)
        .prop_filter("target on attacker", |(x_a, x_t, y_t, _)| (x_a - x_t).hypot(*y_t) > 1e-6)
        .prop_map(|(x_a, x_t, y_t, a)| ReducedState::new(x_a, x_t, y_t, a).unwrap())
}

fn point() -> impl Strategy<Value = Point> {
    (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn roots_scale_with_lengths(s in escape_state(), scale in 0.01f64..100.0) {
        let q = quartic::game_quartic(&s).unwrap();
        let scaled = s.scaled(scale).unwrap();
        let qs = quartic::game_quartic(&scaled).unwrap();
        let r = quartic::real_roots_bracketed(&q, s.y_t).unwrap();
        let rs = quartic::real_roots_bracketed(&qs, scaled.y_t).unwrap();
        prop_assert!((rs.y1 - scale * r.y1).abs() <= 1e-9 * rs.y1);
        prop_assert!((rs.y2 - scale * r.y2).abs() <= 1e-9 * rs.y2);

        // The canonical form's roots are the roots divided by y_T.
        let qc = quartic::QuarticCoeffs::canonical(&s).unwrap();
        let rc = quartic::real_roots_bracketed(&qc, 1.0).unwrap();
        prop_assert!((rc.y2 * s.y_t - r.y2).abs() <= 1e-9 * r.y2);
    }

    #[test]
    fn solution_is_scale_equivariant(s in any_state(), scale in 0.01f64..100.0) {
        let a = game::solve(&s).unwrap();
        let b = game::solve(&s.scaled(scale).unwrap()).unwrap();
        prop_assert!((a.alpha_bar - b.alpha_bar).abs() <= 1e-12);
        let (ya, yb) = (a.y_star.unwrap(), b.y_star.unwrap());
        prop_assert!((yb - scale * ya).abs() <= 1e-9 * (yb.abs() + scale * s.y_t));
        let (ja, jb) = (a.j_star.unwrap(), b.j_star.unwrap());
        prop_assert!((jb - scale * ja).abs() <= 1e-8 * scale * (s.x_a + s.x_t.abs() + s.y_t));
        if a.outcome != Outcome::Boundary && b.outcome != Outcome::Boundary {
            prop_assert_eq!(a.outcome, b.outcome);
        }
    }

    #[test]
    fn escape_iff_faster_than_critical(s in any_state()) {
        prop_assume!(s.x_t > 0.0);
        let sol = game::solve(&s).unwrap();
        let margin = (s.alpha - sol.alpha_bar).abs();
        prop_assume!(margin > 1e-6);
        let expected = if s.alpha > sol.alpha_bar { Outcome::Escape } else { Outcome::Capture };
        prop_assert_eq!(sol.outcome, expected);
    }

    #[test]
    fn optimum_satisfies_bounds(s in escape_state()) {
        let sol = game::solve(&s).unwrap();
        prop_assume!(sol.outcome == Outcome::Escape);
        let y = sol.y_star.unwrap();
        let b = sol.bounds.unwrap();
        prop_assert!(y > s.y_t && y < b.escape_bound);
        if let Some(c) = b.curvature_bound {
            prop_assert!(y < c);
        }
        let slack = 1e-9 * y;
        prop_assert!(b.y_lower.unwrap() - slack <= y && y <= b.y_upper.unwrap() + slack);
        let lhs = (s.x_a / s.x_t).powi(2) / (s.alpha * s.alpha);
        prop_assert!(lhs < (y / (y - s.y_t)).powi(3));
        // Optimal-payoff form and the direct payoff agree at the stationary point.
        let direct = game::payoff(&s, y);
        let j = sol.j_star.unwrap();
        prop_assert!((j - direct).abs() <= 1e-9 * (s.alpha * s.x_a.hypot(y)));
        prop_assert!(game::payoff_derivative(&s, y).unwrap().abs() <= 1e-8 * (1.0 + s.alpha));
    }

    #[test]
    fn intersections_lie_on_circle(s in escape_state()) {
        let c = apollonius::circle(&s).unwrap();
        let (lo, hi) = apollonius::y_axis_intersections(&c, &s).unwrap();
        prop_assert!(lo <= c.center.y && c.center.y <= hi);
        for y in [lo, hi] {
            let r = Point::new(0.0, y).distance(c.center);
            prop_assert!((r - c.radius).abs() <= 1e-9 * c.radius.max(1.0));
        }
    }

    #[test]
    fn classify_matches_solver_sign(s in any_state()) {
        let sol = game::solve(&s).unwrap();
        let j = sol.j_star.unwrap();
        prop_assume!(j.abs() > 1e-9 * s.x_a);
        prop_assume!((region::hyperbola_lhs(s.alpha, s.x_a, s.x_t, s.y_t) - 1.0).abs() > 1e-9);
        let class = region::classify(s.alpha, s.x_a, s.x_t, s.y_t).unwrap();
        let expected = if j > 0.0 { region::RegionClass::Escape } else { region::RegionClass::Capture };
        prop_assert_eq!(class, expected);
    }

    #[test]
    fn pose_is_an_isometry(t in point(), a in point(), d in point(), p in point(), q in point()) {
        prop_assume!(a.distance(d) > 1e-6);
        let sc = RealisticScenario { target_pos: t, attacker_pos: a, defender_pos: d, v_t: 1.0, v_a: 2.0, v_d: 2.0 };
        let (state, pose) = frame::to_reduced(&sc).unwrap();
        let scale = 1e3;
        prop_assert!((p.distance(q) - pose.apply(p).distance(pose.apply(q))).abs() <= 1e-12 * scale);
        prop_assert!(pose.invert(pose.apply(p)).distance(p) <= 1e-12 * scale);
        prop_assert!(pose.apply(d).distance(state.defender()) <= 1e-12 * scale);
        prop_assert!(state.y_t >= 0.0);
        prop_assert_eq!(state.alpha, 0.5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn optimal_simulation_reproduces_analytic_solution(s in escape_state()) {
        let sol = game::solve(&s).unwrap();
        prop_assume!(sol.outcome == Outcome::Escape);
        // Interception time grows without bound as alpha -> 1, so the horizon follows it.
        let t_f = sol.interception_time(&s).unwrap();
        let cfg = sim::SimConfig { dt: 1e-2, t_max: 2.0 * t_f + 1.0, ..sim::SimConfig::default_for(&s) };
        let out = sim::simulate(&s, &sim::StrategySet::OPTIMAL, &sol, &cfg).unwrap();
        let report = sim::validate(&out, &sol, &s, cfg.eps, cfg.dt);
        prop_assert!(report.pass, "{:?}", report);
        for w in out.trajectory.windows(2) {
            let dt = w[1].t - w[0].t;
            prop_assert!(dt > 0.0);
            let scale = 1.0 + w[0].attacker.norm() + w[0].target.norm();
            prop_assert!((w[0].attacker.distance(w[1].attacker) - dt).abs() <= 1e-12 * scale);
            prop_assert!((w[0].target.distance(w[1].target) - s.alpha * dt).abs() <= 1e-12 * scale);
        }
    }
}
