use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dynamics::TrapezoidState;
use crate::error::{Error, Result};
use crate::numerics::{Point, PrecisionPolicy};
use crate::simplex::{gamma, params_from_vertices, VertexConfig};

use super::Regime;

const MAX_ATTEMPTS: u64 = 1_000_000;
const MIN_SEPARATION: f64 = 1e-3;

fn sample_point(rng: &mut ChaCha8Rng, dim: usize, policy: &PrecisionPolicy) -> Option<Point> {
    let coords: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
    let p = Point::from_f64(&coords, policy);
    let norm = p.norm_squared().sqrt();
    (norm > 1e-12).then(|| p.scale(&norm.recip()))
}

fn well_separated(c: &VertexConfig) -> bool {
    let v = c.vertices();
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i].distance_squared(&v[j]).sqrt() >= MIN_SEPARATION))
}

/// Vertices drawn independently and uniformly on the unit sphere (normalized
/// Gaussian vectors). Tetrahedra must have `Gamma > 10 tol`; other shapes
/// need every pair of vertices at least `1e-3` apart. Quadrilaterals come
/// back in convex order. Deterministic in `seed`.
pub fn generate_random(
    regime: Regime,
    dim: usize,
    seed: u64,
    policy: &PrecisionPolicy,
) -> Result<VertexConfig> {
    let (dim, count) = match regime {
        Regime::Tetra => (3, 4),
        Regime::Quad => (2, 4),
        Regime::Triangle => (2, 3),
        Regime::Vertices => (dim, dim + 1),
        Regime::Trapezoid => {
            return Err(Error::InvalidInput(
                "trapezoids are generated by abscissas, not vertices".into(),
            ))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_gamma = policy.tol_times(10);
    for _ in 0..MAX_ATTEMPTS {
        let Some(points) = (0..count).map(|_| sample_point(&mut rng, dim, policy)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let Ok(config) = VertexConfig::new(points, policy) else {
            continue;
        };
        let accepted = match regime {
            Regime::Tetra => params_from_vertices(&config).map(|p| gamma(&p) > min_gamma)?,
            _ => well_separated(&config),
        };
        if accepted {
            return Ok(config);
        }
    }
    Err(Error::RejectionExhausted { attempts: MAX_ATTEMPTS })
}

/// Abscissa pair with `|a|, |b| <= 1 - 1e-3` and `|a - b| >= 1e-3`.
pub fn random_trapezoid(seed: u64, policy: &PrecisionPolicy) -> Result<TrapezoidState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1.0 - MIN_SEPARATION;
    for _ in 0..MAX_ATTEMPTS {
        let a: f64 = rng.random_range(-bound..=bound);
        let b: f64 = rng.random_range(-bound..=bound);
        if (a - b).abs() >= MIN_SEPARATION {
            return TrapezoidState::new(policy.from_f64(a), policy.from_f64(b), policy);
        }
    }
    Err(Error::RejectionExhausted { attempts: MAX_ATTEMPTS })
}
