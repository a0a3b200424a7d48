use proptest::prelude::*;

use simplex_orbits::dynamics::{run_orbit, step_params, step_triangle, step_vertices, OrbitState};
use simplex_orbits::limits::{estimate_order, tetra_limit};
use simplex_orbits::numerics::{det, second_sphere_intersection, Point, PrecisionPolicy, Real, SmallMatrix};
use simplex_orbits::simplex::{
    delta, gamma, og_squared, opposite_root_sum, params_from_vertices, ptolemy, ptolemy_product_form, shape_class,
    triangle_params, EdgeParams, ShapeClass, TriangleParams, VertexConfig,
};

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::new(256).unwrap()
}

/// Raw direction in `[-1, 1]^dim`, kept away from the origin.
fn direction(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim).prop_filter("away from origin", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
}

fn on_sphere(raw: &[Vec<f64>], p: &PrecisionPolicy) -> Option<VertexConfig> {
    let pts = raw.iter().map(|c| Point::from_f64(c, p)).collect();
    VertexConfig::projected(pts, p).ok()
}

fn tetra() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(direction(3), 4)
}

/// A tetrahedron that is not too flat and has no nearly coincident vertices.
fn solid(raw: &[Vec<f64>], p: &PrecisionPolicy) -> Option<(VertexConfig, EdgeParams)> {
    let c = on_sphere(raw, p)?;
    let e = params_from_vertices(&c).ok()?;
    (gamma(&e) > 1e-3 && e.values().iter().all(|d| *d > 1e-3)).then_some((c, e))
}

fn slack(p: &PrecisionPolicy) -> Real {
    p.tol_times(64)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn chord_lands_on_sphere_and_is_an_involution(a in direction(3), g in direction(3), shrink in 0.05f64..0.95) {
        let p = policy();
        let a = Point::from_f64(&a, &p);
        let a = a.scale(&a.norm_squared().sqrt().recip());
        let g = Point::from_f64(&g, &p);
        let g = g.scale(&(p.from_f64(shrink) / g.norm_squared().sqrt()));
        prop_assume!(a.distance_squared(&g) > 1e-4);
        let image = second_sphere_intersection(&a, &g, &p).unwrap();
        prop_assert!((image.norm_squared().sqrt() - 1).abs() <= p.tol_times(8));
        let back = second_sphere_intersection(&image, &g, &p).unwrap();
        prop_assert!(back.distance_squared(&a).sqrt() <= slack(&p));
    }

    #[test]
    fn det_scales_linearly_in_a_row(entries in prop::collection::vec(-3.0f64..3.0, 16), c in -4.0f64..4.0, row in 0usize..4, bits in prop::sample::select(vec![128u32, 512])) {
        let p = PrecisionPolicy::new(bits).unwrap();
        let m = SmallMatrix::new(4, entries.iter().map(|x| p.from_f64(*x)).collect()).unwrap();
        let scaled: Vec<Real> = m.row(row).iter().map(|x| x * p.from_f64(c)).collect();
        let lhs = det(&m.with_row(row, &scaled).unwrap());
        let rhs = det(&m) * p.from_f64(c);
        prop_assert!((lhs - rhs).abs() <= slack(&p));
    }

    #[test]
    fn unit_radius_identity(raw in tetra()) {
        let p = policy();
        let Some((_, e)) = solid(&raw, &p) else { return Ok(()) };
        prop_assert!((gamma(&e) + delta(&e) / 2).abs() <= *p.tolerance());
    }

    #[test]
    fn ptolemy_forms_agree(raw in tetra()) {
        let p = policy();
        let Some((_, e)) = solid(&raw, &p) else { return Ok(()) };
        let poly = ptolemy(&e);
        prop_assert!((ptolemy_product_form(&e) - &poly).abs() <= slack(&p));
        prop_assert!((poly + delta(&e)).abs() <= slack(&p));
    }

    #[test]
    fn opposite_root_sum_bounded(raw in tetra()) {
        let p = policy();
        let Some((_, e)) = solid(&raw, &p) else { return Ok(()) };
        let s = opposite_root_sum(&e);
        prop_assert!(s > 0 && s <= 8 + p.tolerance().clone());
        let at_bound = (s - 8).abs() <= *p.tolerance();
        prop_assert_eq!(at_bound, shape_class(&e, &p) != ShapeClass::Generic);
    }

    #[test]
    fn og_matches_centroid(raw in tetra()) {
        let p = policy();
        let Some((c, e)) = solid(&raw, &p) else { return Ok(()) };
        prop_assert!((og_squared(&e) - c.centroid().norm_squared()).abs() <= *p.tolerance());
    }

    #[test]
    fn triangle_bounds(raw in prop::collection::vec(direction(2), 3)) {
        let p = policy();
        let Some(c) = on_sphere(&raw, &p) else { return Ok(()) };
        let Ok(tp) = TriangleParams::from_vertices(&c, &p) else { return Ok(()) };
        let tol = p.tolerance().clone();
        prop_assert!(tp.s <= 9 + tol.clone());
        prop_assert!(tp.t <= tp.s.square() / 3 + tol);
    }

    #[test]
    fn cross_map_agrees(raw in tetra()) {
        let p = policy();
        let Some((mut c, mut e)) = solid(&raw, &p) else { return Ok(()) };
        for _ in 0..5 {
            c = step_vertices(&c, &p).unwrap().config;
            e = step_params(&e, &p).unwrap().0;
            prop_assert!(params_from_vertices(&c).unwrap().max_abs_diff(&e) <= slack(&p));
        }
    }

    #[test]
    fn orbit_is_monotone(raw in tetra()) {
        let p = policy();
        let Some((_, e)) = solid(&raw, &p) else { return Ok(()) };
        let orbit = run_orbit(OrbitState::Params(e), 30, &p).unwrap();
        for w in orbit.records.windows(2) {
            prop_assert!(w[1].og2 <= w[0].og2);
            let (a, b) = (w[0].pt.as_ref().unwrap(), w[1].pt.as_ref().unwrap());
            prop_assert!(b.clone() >= a - slack(&p));
        }
    }

    #[test]
    fn limit_edges_sum_to_eight(raw in tetra()) {
        let p = policy();
        let Some((_, e)) = solid(&raw, &p) else { return Ok(()) };
        let lim = tetra_limit(&e, &p).unwrap();
        let sum = &lim.d12_inf + &lim.d13_inf + &lim.d14_inf;
        prop_assert!((sum - 8).abs() <= *p.tolerance());
        prop_assert!(lim.rate_r < 1.0);
    }

    #[test]
    fn triangle_parameters_nondecreasing(raw in prop::collection::vec(direction(2), 3)) {
        let p = policy();
        let Some(c) = on_sphere(&raw, &p) else { return Ok(()) };
        let Ok(mut tp) = TriangleParams::from_vertices(&c, &p) else { return Ok(()) };
        prop_assume!(tp.s > 1e-2);
        for _ in 0..6 {
            let Ok(next) = step_triangle(&tp, &p) else { break };
            prop_assert!(next.s.clone() >= &tp.s - slack(&p));
            prop_assert!(next.u.clone() >= &tp.u - slack(&p));
            if tp.s >= 3 {
                prop_assert!(next.t.clone() >= &tp.t - slack(&p));
            }
            tp = next;
        }
    }

    #[test]
    fn order_fit_ignores_scale(scale in 1e-3f64..1e3) {
        let p = policy();
        let base: Vec<Real> = (0..12).map(|n| p.ratio(1, 3).powi(n + 3)).collect();
        let scaled: Vec<Real> = base.iter().map(|x| x * p.from_f64(scale)).collect();
        let a = estimate_order(&base, &p).unwrap();
        let b = estimate_order(&scaled, &p).unwrap();
        prop_assert!((a.order - b.order).abs() < 1e-6);
    }
}

#[test]
fn triangle_from_right_isosceles() {
    let p = policy();
    let tp = triangle_params(&p.int(4), &p.int(2), &p.int(2), &p).unwrap();
    assert_eq!((tp.s.clone(), tp.t.clone(), tp.u.clone()), (p.int(8), p.int(20), p.int(16)));
}
