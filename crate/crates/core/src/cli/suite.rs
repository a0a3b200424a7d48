use rayon::prelude::*;

use crate::dynamics::{
    harmonic_partner, run_orbit, run_orbit_with, step_params, step_trapezoid, step_vertices, OrbitOptions,
    OrbitState, TrapezoidState,
};
use crate::error::Result;
use crate::limits::{estimate_order, quad_limit, tetra_limit, triangle_limit};
use crate::numerics::{PrecisionPolicy, Real};
use crate::simplex::{
    centroid_distances, delta, gamma, params_from_vertices, shape_class, EdgeParams, ShapeClass,
    TriangleParams, VertexConfig,
};

use super::generate::generate_random;
use super::Regime;

/// Steps of the vertex/parameter comparison per trial.
const CROSS_MAP_STEPS: usize = 20;
/// Trials whose predicted rate would need more steps than this are skipped
/// by the agreement check.
const AGREEMENT_STEP_CAP: usize = 5000;
const AGREEMENT_TARGET: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub trials: usize,
    pub violations: usize,
    pub skipped: usize,
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    violated: bool,
    skipped: bool,
}

const CHECKS: [&str; 5] = ["unit_radius", "cross_map", "monotonicity", "pt_lambda", "limit_agreement"];

/// Steps the agreement check allows for a predicted rate `r`.
pub fn agreement_budget(rate: f64) -> Option<usize> {
    if rate <= 0.0 {
        return Some(200);
    }
    if rate >= 1.0 {
        return None;
    }
    let needed = (2.0 * AGREEMENT_TARGET.ln() / rate.ln()).ceil() as usize;
    let budget = needed.max(200);
    (budget <= AGREEMENT_STEP_CAP).then_some(budget)
}

/// Monotonicity violations along a parameter orbit: `og2` strictly decreasing
/// while the shape is generic, pair products and `Pt` non-decreasing.
pub fn monotonicity_violations(states: &[EdgeParams], policy: &PrecisionPolicy) -> usize {
    let slack = policy.tol_times(64);
    let og2 = |p: &EdgeParams| crate::simplex::og_squared(p);
    states
        .windows(2)
        .filter(|w| {
            let (a, b) = (&w[0], &w[1]);
            let generic = shape_class(a, policy) == ShapeClass::Generic;
            let og_bad = generic && og2(b) >= og2(a);
            let products_bad = a
                .pair_products()
                .iter()
                .zip(b.pair_products())
                .any(|(x, y)| y < x - &slack);
            let pt_bad = crate::simplex::ptolemy(b) < crate::simplex::ptolemy(a) - &slack;
            og_bad || products_bad || pt_bad
        })
        .count()
}

/// Steps where `Pt_{n+1} = Λ² Pt_n` fails by more than `64 tol`.
pub fn pt_lambda_violations(states: &[EdgeParams], policy: &PrecisionPolicy) -> Result<usize> {
    let slack = policy.tol_times(64);
    let mut bad = 0;
    for w in states.windows(2) {
        let lambda = centroid_distances(&w[0], policy)?.lambda();
        let predicted = lambda.square() * crate::simplex::ptolemy(&w[0]);
        if (predicted - crate::simplex::ptolemy(&w[1])).abs() > slack {
            bad += 1;
        }
    }
    Ok(bad)
}

fn verify_trial(seed: u64, steps: usize, policy: &PrecisionPolicy) -> Result<[Tally; 5]> {
    let tol = policy.tolerance();
    let slack = policy.tol_times(64);
    let config = generate_random(Regime::Tetra, 3, seed, policy)?;
    let start = params_from_vertices(&config)?;
    let mut out = [Tally::default(); 5];

    out[0].violated = (gamma(&start) + delta(&start) / 2).abs() > *tol;

    let (mut c, mut p) = (config.clone(), start.clone());
    for _ in 0..CROSS_MAP_STEPS {
        c = step_vertices(&c, policy)?.config;
        p = step_params(&p, policy)?.0;
        if params_from_vertices(&c)?.max_abs_diff(&p) > slack {
            out[1].violated = true;
            break;
        }
    }

    let orbit = run_orbit(OrbitState::Params(start.clone()), steps, policy)?;
    let states: Vec<EdgeParams> = orbit.records.iter().filter_map(|r| r.state.as_params().cloned()).collect();
    out[2].violated = monotonicity_violations(&states, policy) > 0;
    out[3].violated = pt_lambda_violations(&states, policy)? > 0;

    let limit = tetra_limit(&start, policy)?;
    match agreement_budget(limit.rate_r.to_f64()) {
        None => out[4].skipped = true,
        Some(budget) => {
            let orbit = run_orbit(OrbitState::Params(start), budget, policy)?;
            let last = orbit.last().state.as_params().expect("params orbit");
            let invariant = orbit.records.iter().all(|r| {
                let p = r.state.as_params().expect("params orbit");
                tetra_limit(p, policy).is_ok_and(|l| l.max_deviation(&limit.limit_params()) <= slack)
            });
            out[4].violated = limit.max_deviation(last) >= AGREEMENT_TARGET || !invariant;
        }
    }
    Ok(out)
}

/// Invariant suite over `n` random tetrahedra seeded `seed, seed+1, ...`.
/// Trials run in parallel; the summary does not depend on scheduling.
pub fn verify_suite(n: usize, seed: u64, steps: usize, policy: &PrecisionPolicy) -> Result<Vec<CheckSummary>> {
    let trials: Vec<[Tally; 5]> = (0..n as u64)
        .into_par_iter()
        .map(|i| verify_trial(seed.wrapping_add(i), steps, policy))
        .collect::<Result<_>>()?;
    Ok(CHECKS
        .iter()
        .enumerate()
        .map(|(k, name)| CheckSummary {
            name,
            trials: n,
            violations: trials.iter().filter(|t| t[k].violated).count(),
            skipped: trials.iter().filter(|t| t[k].skipped).count(),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleOutcome {
    pub name: &'static str,
    pub value: String,
    pub threshold: &'static str,
    pub passed: bool,
}

/// Cyclic quadrilateral at polar angles `0, acos(0.923827833284), acos(-0.8),
/// -acos(0.9)`, nearly harmonic.
pub fn harmonic_quad(policy: &PrecisionPolicy) -> Result<EdgeParams> {
    let cosines = ["0.923827833284", "-0.8", "0.9"];
    let mut angles = vec![policy.zero()];
    for (k, c) in cosines.iter().enumerate() {
        let a = policy.parse(c)?.acos();
        angles.push(if k == 2 { -a } else { a });
    }
    let config = VertexConfig::new(angles.iter().map(crate::numerics::Point::on_circle).collect(), policy)?;
    params_from_vertices(&config)
}

pub const TRAPEZOID_SEED: (&str, &str) = ("0.955", "0.12237784429");

pub fn worked_examples(policy: &PrecisionPolicy) -> Result<Vec<ExampleOutcome>> {
    let mut out = Vec::new();
    let digits = 8;
    let show = |x: &Real| x.to_decimal(digits);

    // Harmonic cyclic quadrilateral: quasi-square within 5 steps.
    let quad = harmonic_quad(policy)?;
    let square = EdgeParams::new_unchecked([2, 4, 2, 2, 4, 2].map(|x| policy.int(x)));
    let orbit = run_orbit_with(OrbitState::Params(quad.clone()), 5, policy, OrbitOptions { stop_when_converged: false })?;
    let best = orbit.records[1..]
        .iter()
        .map(|r| r.state.as_params().expect("params orbit").max_abs_diff(&square))
        .reduce(Real::min)
        .expect("five steps");
    out.push(ExampleOutcome {
        name: "harmonic_quad_square_within_5_steps",
        passed: best < 1e-3,
        value: show(&best),
        threshold: "< 1e-3",
    });
    let rate = quad_limit(&quad, policy)?.rate_r;
    out.push(ExampleOutcome {
        name: "harmonic_quad_rate",
        passed: rate < 1e-3,
        value: show(&rate),
        threshold: "< 1e-3",
    });

    // Isosceles trapezoid: quasi-square after three steps.
    let a0 = policy.parse(TRAPEZOID_SEED.0)?;
    let b0 = policy.parse(TRAPEZOID_SEED.1)?;
    let mut st = TrapezoidState::new(a0.clone(), b0.clone(), policy)?;
    for _ in 0..3 {
        st = step_trapezoid(&st, policy)?;
    }
    let sum = (&st.a + &st.b).abs();
    let half = (st.a.square() - policy.ratio(1, 2)).abs();
    out.push(ExampleOutcome {
        name: "trapezoid_quasi_square_3_steps",
        passed: sum < 1e-6 && half < 1e-3,
        value: format!("|a+b|={}; |a^2-1/2|={}", show(&sum), show(&half)),
        threshold: "< 1e-6; < 1e-3",
    });

    // Cubic order on the exactly harmonic trapezoid through the seed.
    let b_exact = harmonic_partner(&a0, &b0, policy)?;
    let start = TrapezoidState::new(a0, b_exact, policy)?;
    let orbit = run_orbit_with(OrbitState::Trapezoid(start), 8, policy, OrbitOptions { stop_when_converged: false })?;
    let est = estimate_order(&orbit.og_distances(policy), policy)?;
    out.push(ExampleOutcome {
        name: "trapezoid_cubic_order",
        passed: (est.order.to_f64() - 3.0).abs() <= 0.1,
        value: show(&est.order),
        threshold: "3 +/- 0.1",
    });

    // Triangle (8, 20, 16): reaches the equilateral point and converges
    // quadratically.
    let tri = TriangleParams::from_st(policy.int(8), policy.int(20), policy)?;
    let limit = triangle_limit(policy);
    let orbit = run_orbit_with(OrbitState::Triangle(tri), 15, policy, OrbitOptions { stop_when_converged: false })?;
    let reached = orbit
        .records
        .iter()
        .find(|r| r.state.as_triangle().expect("triangle orbit").max_abs_diff(&limit) < 1e-20)
        .map(|r| r.step);
    out.push(ExampleOutcome {
        name: "triangle_reaches_9_27_27",
        passed: reached.is_some(),
        value: reached.map_or("never".into(), |s| format!("step {s}")),
        threshold: "within 1e-20 by step 15",
    });
    let est = estimate_order(&orbit.og_distances(policy), policy)?;
    out.push(ExampleOutcome {
        name: "triangle_quadratic_order",
        passed: (est.order.to_f64() - 2.0).abs() <= 0.05 && (est.constant.to_f64() - 1.0).abs() <= 0.05,
        value: format!("order={}; constant={}", show(&est.order), show(&est.constant)),
        threshold: "2 +/- 0.05; 1 +/- 0.05",
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_grows_with_rate() {
        assert_eq!(agreement_budget(0.5), Some(200));
        assert_eq!(agreement_budget(0.0), Some(200));
        assert!(agreement_budget(0.99).unwrap() > 2000);
        assert_eq!(agreement_budget(0.9999), None);
    }

    #[test]
    fn small_suite_passes() {
        let p = PrecisionPolicy::default();
        let summary = verify_suite(4, 11, 100, &p).unwrap();
        assert_eq!(summary.len(), 5);
        assert!(summary.iter().all(|c| c.violations == 0), "{summary:?}");
    }
}
