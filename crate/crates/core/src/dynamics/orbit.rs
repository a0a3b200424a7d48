use crate::error::{Error, Result};
use crate::numerics::{PrecisionPolicy, Real};
use crate::simplex::{
    gamma, og_squared, params_from_vertices, ptolemy, EdgeParams, TriangleParams, VertexConfig,
};

use super::{step_params, step_trapezoid, step_triangle, step_vertices, TrapezoidState};

/// Current state of an orbit; the variant fixes which map drives it.
#[derive(Clone, Debug, PartialEq)]
pub enum OrbitState {
    /// Tetrahedron or cyclic quadrilateral, through its edge parameters.
    Params(EdgeParams),
    Triangle(TriangleParams),
    Trapezoid(TrapezoidState),
    Vertices(VertexConfig),
}

impl OrbitState {
    pub fn kind(&self) -> &'static str {
        match self {
            OrbitState::Params(_) => "params",
            OrbitState::Triangle(_) => "triangle",
            OrbitState::Trapezoid(_) => "trapezoid",
            OrbitState::Vertices(_) => "vertices",
        }
    }

    pub fn as_params(&self) -> Option<&EdgeParams> {
        match self {
            OrbitState::Params(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_triangle(&self) -> Option<&TriangleParams> {
        match self {
            OrbitState::Triangle(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_trapezoid(&self) -> Option<&TrapezoidState> {
        match self {
            OrbitState::Trapezoid(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_vertices(&self) -> Option<&VertexConfig> {
        match self {
            OrbitState::Vertices(v) => Some(v),
            _ => None,
        }
    }

    /// Edge parameters of four-point states.
    pub fn edge_params(&self, policy: &PrecisionPolicy) -> Option<EdgeParams> {
        match self {
            OrbitState::Params(p) => Some(p.clone()),
            OrbitState::Trapezoid(t) => t.to_vertices(policy).ok().and_then(|c| params_from_vertices(&c).ok()),
            OrbitState::Vertices(c) if c.len() == 4 => params_from_vertices(c).ok(),
            _ => None,
        }
    }
}

/// Diagnostics of one orbit step.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    pub step: usize,
    pub state: OrbitState,
    pub og2: Real,
    /// Power of the centroid, `1 - og2`.
    pub p: Real,
    /// Ptolemy quantity, for four-point states in edge-parameter or vertex form.
    pub pt: Option<Real>,
    /// `(d12 d34, d13 d24, d14 d23)` for four-point states.
    pub pair_products: Option<[Real; 3]>,
    /// Renormalization applied in vertex space.
    pub drift: Option<Real>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Ran the requested number of steps.
    Completed,
    /// `og2` fell below the comparison tolerance.
    Converged,
    /// The pair products stayed within tolerance for three consecutive steps.
    Stationary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    pub records: Vec<OrbitRecord>,
    pub termination: Termination,
}

impl Orbit {
    pub fn og_sequence(&self) -> Vec<Real> {
        self.records.iter().map(|r| r.og2.clone()).collect()
    }

    /// `|OG_n|`, the sequence used for order estimation. Where `OG_n` is only
    /// known through `og2 = 1 - (...)`, values with `og2` at or below the
    /// underflow floor are rounding noise and come back as zero. Trapezoid
    /// orbits carry the centroid abscissa itself.
    pub fn og_distances(&self, policy: &PrecisionPolicy) -> Vec<Real> {
        let floor = policy.underflow_floor();
        self.records
            .iter()
            .map(|r| match &r.state {
                OrbitState::Trapezoid(t) => t.centroid_abscissa().abs(),
                _ if r.og2 <= floor => policy.zero(),
                _ => r.og2.sqrt(),
            })
            .collect()
    }

    pub fn last(&self) -> &OrbitRecord {
        self.records.last().expect("orbits hold at least the initial record")
    }

    pub fn even_snapshots(&self) -> impl Iterator<Item = &VertexConfig> {
        self.records.iter().step_by(2).filter_map(|r| r.state.as_vertices())
    }

    pub fn odd_snapshots(&self) -> impl Iterator<Item = &VertexConfig> {
        self.records.iter().skip(1).step_by(2).filter_map(|r| r.state.as_vertices())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitOptions {
    /// Stop early on convergence or stationarity. Disable to collect the full
    /// tail for order fitting.
    pub stop_when_converged: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            stop_when_converged: true,
        }
    }
}

/// Iterates `steps` times from `initial` with early stopping.
pub fn run_orbit(initial: OrbitState, steps: usize, policy: &PrecisionPolicy) -> Result<Orbit> {
    run_orbit_with(initial, steps, policy, OrbitOptions::default())
}

pub fn run_orbit_with(
    initial: OrbitState,
    steps: usize,
    policy: &PrecisionPolicy,
    options: OrbitOptions,
) -> Result<Orbit> {
    let tol = policy.tolerance();
    let planar_params = match &initial {
        OrbitState::Params(p) => gamma(p) <= *tol,
        _ => false,
    };
    let mut records = vec![record(0, initial, None, None, policy)];
    let mut quiet_steps = 0;
    for step in 1..=steps {
        let previous = records.last().expect("non-empty");
        if options.stop_when_converged {
            if previous.og2 < *tol {
                return Ok(Orbit { records, termination: Termination::Converged });
            }
            if quiet_steps >= 3 {
                return Ok(Orbit { records, termination: Termination::Stationary });
            }
        }
        let next = advance(&previous.state, policy).map_err(|e| e.at_step(step))?;
        let (state, p, drift) = next;
        if planar_params {
            let flatness = gamma(state.as_params().expect("params orbit"));
            if flatness.abs() > policy.tol_times(64) {
                return Err(Error::ConsistencyFault(format!(
                    "quadrilateral orbit left the plane (Gamma = {})",
                    flatness.to_decimal(12)
                ))
                .at_step(step));
            }
        }
        let rec = record(step, state, p, drift, policy);
        let still = match (&rec.pair_products, &previous.pair_products) {
            (Some(now), Some(before)) => now.iter().zip(before).all(|(x, y)| policy.approx_eq(x, y)),
            _ => false,
        };
        quiet_steps = if still { quiet_steps + 1 } else { 0 };
        records.push(rec);
    }
    Ok(Orbit { records, termination: Termination::Completed })
}

type Advanced = (OrbitState, Option<Real>, Option<Real>);

fn advance(state: &OrbitState, policy: &PrecisionPolicy) -> Result<Advanced> {
    Ok(match state {
        OrbitState::Params(p) => {
            let (next, p1) = step_params(p, policy)?;
            (OrbitState::Params(next), Some(p1), None)
        }
        OrbitState::Triangle(t) => (OrbitState::Triangle(step_triangle(t, policy)?), None, None),
        OrbitState::Trapezoid(t) => (OrbitState::Trapezoid(step_trapezoid(t, policy)?), None, None),
        OrbitState::Vertices(c) => {
            let out = step_vertices(c, policy)?;
            (OrbitState::Vertices(out.config), None, Some(out.drift))
        }
    })
}

fn record(
    step: usize,
    state: OrbitState,
    p: Option<Real>,
    drift: Option<Real>,
    policy: &PrecisionPolicy,
) -> OrbitRecord {
    let og2 = match &state {
        OrbitState::Params(d) => og_squared(d),
        OrbitState::Triangle(t) => t.og_squared(),
        OrbitState::Trapezoid(t) => t.og_squared(),
        OrbitState::Vertices(c) => c.centroid().norm_squared(),
    };
    let p = p.unwrap_or_else(|| 1 - &og2);
    let params = state.edge_params(policy);
    let pt = match &state {
        OrbitState::Params(_) | OrbitState::Vertices(_) => params.as_ref().map(ptolemy),
        _ => None,
    };
    let pair_products = params.as_ref().map(EdgeParams::pair_products);
    OrbitRecord { step, state, og2, p, pt, pair_products, drift }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: &PrecisionPolicy, v: [i64; 6]) -> EdgeParams {
        EdgeParams::new(v.map(|x| p.int(x)), p).unwrap()
    }

    #[test]
    fn isosceles_orbit_is_constant() {
        let p = PrecisionPolicy::default();
        let start = EdgeParams::new(std::array::from_fn(|_| p.ratio(8, 3)), &p).unwrap();
        let options = OrbitOptions { stop_when_converged: false };
        let orbit = run_orbit_with(OrbitState::Params(start.clone()), 5, &p, options).unwrap();
        assert_eq!(orbit.records.len(), 6);
        for r in &orbit.records {
            assert!(r.state.as_params().unwrap().max_abs_diff(&start) <= *p.tolerance());
        }
        let stopped = run_orbit(OrbitState::Params(start), 5, &p).unwrap();
        assert_eq!(stopped.termination, Termination::Converged);
        assert_eq!(stopped.records.len(), 1);
    }

    #[test]
    fn generic_tetrahedron_is_monotone() {
        let p = PrecisionPolicy::default();
        let orbit = run_orbit(OrbitState::Params(params(&p, [2, 2, 4, 2, 2, 2])), 50, &p).unwrap();
        assert_eq!(orbit.records.len(), 51);
        for w in orbit.records.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            assert!(b.og2 < a.og2);
            assert!(b.pt.as_ref().unwrap() >= a.pt.as_ref().unwrap());
            let (pa, pb) = (a.pair_products.as_ref().unwrap(), b.pair_products.as_ref().unwrap());
            assert!(pa.iter().zip(pb).all(|(x, y)| y >= x));
            assert!(p.approx_eq(&b.p, &(1 - &b.og2)));
        }
    }

    #[test]
    fn triangle_orbit_is_quadratic() {
        let p = PrecisionPolicy::default();
        let start = TriangleParams::from_st(p.int(8), p.int(20), &p).unwrap();
        let orbit = run_orbit(OrbitState::Triangle(start), 10, &p).unwrap();
        let og2 = orbit.og_sequence();
        assert!(p.approx_eq(&og2[1], &(1 - p.ratio(896, 900))));
        let ratios: Vec<f64> = og2
            .windows(2)
            .filter(|w| w[1] > *p.tolerance())
            .map(|w| (&w[1] / w[0].square()).to_f64())
            .collect();
        assert!((ratios.last().unwrap() - 1.0).abs() < 0.02, "{ratios:?}");
    }

    #[test]
    fn vertex_snapshots_alternate() {
        let p = PrecisionPolicy::default();
        let angles = [0.0, 1.0, 2.5].map(|a| p.from_f64(a));
        let start = VertexConfig::from_polar_angles(&angles, &p).unwrap();
        let options = OrbitOptions { stop_when_converged: false };
        let orbit = run_orbit_with(OrbitState::Vertices(start), 12, &p, options).unwrap();
        assert_eq!(orbit.even_snapshots().count(), 7);
        assert_eq!(orbit.odd_snapshots().count(), 6);
        assert!(orbit.records.iter().skip(1).all(|r| r.drift.is_some()));
        let even: Vec<_> = orbit.even_snapshots().collect();
        let odd: Vec<_> = orbit.odd_snapshots().collect();
        assert!(even[6].max_vertex_distance(even[5]) <= p.tol_times(64));
        assert!(odd[5].max_vertex_distance(&even[6].reflected()) <= p.tol_times(64));
    }

    #[test]
    fn errors_carry_the_step() {
        let p = PrecisionPolicy::default();
        let zero = EdgeParams::new_unchecked(std::array::from_fn(|_| p.zero()));
        let err = run_orbit_with(OrbitState::Params(zero), 3, &p, OrbitOptions { stop_when_converged: false })
            .unwrap_err();
        assert!(matches!(err, Error::AtStep { step: 1, .. }));
        assert_eq!(err.root(), &Error::VanishingPower);
    }
}
