use crate::error::{Error, Result};
use crate::numerics::{Point, PrecisionPolicy, Real};

/// Ordered vertices on the unit sphere of `R^dim`, centered at the origin.
///
/// Holds either a `dim`-simplex (`dim + 1` vertices) or, for `dim == 2`, a
/// cyclic quadrilateral (4 vertices).
#[derive(Clone, Debug, PartialEq)]
pub struct VertexConfig {
    dim: usize,
    vertices: Vec<Point>,
}

impl VertexConfig {
    /// Validates the vertices. Planar quadrilaterals are relabeled by
    /// increasing polar angle so that `(1,3)` and `(2,4)` are the diagonals.
    pub fn new(vertices: Vec<Point>, policy: &PrecisionPolicy) -> Result<Self> {
        let mut config = VertexConfig::new_ordered(vertices, policy)?;
        if config.is_quadrilateral() {
            config.vertices.sort_by(|p, q| {
                Real::atan2(&p[1], &p[0]).total_cmp(&Real::atan2(&q[1], &q[0]))
            });
        }
        Ok(config)
    }

    /// Validates the vertices and keeps their order as given.
    pub fn new_ordered(vertices: Vec<Point>, policy: &PrecisionPolicy) -> Result<Self> {
        let dim = vertices.first().map(Point::dim).unwrap_or(0);
        if dim < 2 {
            return Err(Error::InvalidInput(format!(
                "vertices must live in dimension >= 2, got {dim}"
            )));
        }
        if vertices.iter().any(|v| v.dim() != dim) {
            return Err(Error::InvalidInput("vertices have mixed dimensions".into()));
        }
        let count = vertices.len();
        if count != dim + 1 && !(dim == 2 && count == 4) {
            return Err(Error::InvalidInput(format!(
                "{count} vertices in dimension {dim}: expected {} (or 4 for a planar quadrilateral)",
                dim + 1
            )));
        }
        for (index, v) in vertices.iter().enumerate() {
            let deviation = v.norm_squared().sqrt() - 1;
            if deviation.abs() > *policy.tolerance() {
                return Err(Error::NotOnSphere {
                    index,
                    deviation: deviation.to_decimal(6),
                });
            }
        }
        let spread = vertices[1..]
            .iter()
            .map(|v| v.distance_squared(&vertices[0]))
            .fold(policy.zero(), Real::max);
        if spread.sqrt() <= *policy.tolerance() {
            return Err(Error::InvalidInput("all vertices coincide".into()));
        }
        Ok(VertexConfig { dim, vertices })
    }

    /// Scales every (nonzero) input point onto the unit sphere, then validates.
    pub fn projected(vertices: Vec<Point>, policy: &PrecisionPolicy) -> Result<Self> {
        let mut out = Vec::with_capacity(vertices.len());
        for v in vertices {
            let norm = v.norm_squared().sqrt();
            if norm <= *policy.tolerance() {
                return Err(Error::InvalidInput("vertex at the origin cannot be projected".into()));
            }
            out.push(v.scale(&norm.recip()));
        }
        VertexConfig::new(out, policy)
    }

    /// Points `(cos a, sin a)`, kept in the given order.
    pub fn from_polar_angles(angles: &[Real], policy: &PrecisionPolicy) -> Result<Self> {
        VertexConfig::new_ordered(angles.iter().map(Point::on_circle).collect(), policy)
    }

    /// Images under a step of the dynamics; only the count and dimension are
    /// inherited from a validated configuration.
    pub(crate) fn from_images(dim: usize, vertices: Vec<Point>) -> Self {
        VertexConfig { dim, vertices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_quadrilateral(&self) -> bool {
        self.dim == 2 && self.vertices.len() == 4
    }

    pub fn is_tetrahedron(&self) -> bool {
        self.dim == 3 && self.vertices.len() == 4
    }

    pub fn is_triangle(&self) -> bool {
        self.dim == 2 && self.vertices.len() == 3
    }

    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices)
    }

    /// Point reflection through the center of the sphere.
    pub fn reflected(&self) -> VertexConfig {
        let minus_one = -Real::one(self.vertices[0][0].prec());
        VertexConfig {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(&minus_one)).collect(),
        }
    }

    /// Largest distance between corresponding vertices.
    pub fn max_vertex_distance(&self, other: &VertexConfig) -> Real {
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| a.distance_squared(b).sqrt())
            .reduce(Real::max)
            .expect("non-empty configuration")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrilateral_is_sorted_by_polar_angle() {
        let p = PrecisionPolicy::default();
        let v = |x: f64, y: f64| Point::from_f64(&[x, y], &p);
        let c = VertexConfig::new(vec![v(-1.0, 0.0), v(1.0, 0.0), v(0.0, -1.0), v(0.0, 1.0)], &p)
            .unwrap();
        let angles: Vec<f64> = c
            .vertices()
            .iter()
            .map(|q| Real::atan2(&q[1], &q[0]).to_f64())
            .collect();
        assert!(angles.windows(2).all(|w| w[0] < w[1]), "{angles:?}");
    }

    #[test]
    fn triangles_keep_their_order() {
        let p = PrecisionPolicy::default();
        let v = |x: f64, y: f64| Point::from_f64(&[x, y], &p);
        let input = vec![v(0.0, 1.0), v(1.0, 0.0), v(-1.0, 0.0)];
        let c = VertexConfig::new(input.clone(), &p).unwrap();
        assert_eq!(c.vertices(), &input[..]);
    }

    #[test]
    fn rejects_off_sphere_and_coincident_vertices() {
        let p = PrecisionPolicy::default();
        let v = |x: f64, y: f64, z: f64| Point::from_f64(&[x, y, z], &p);
        let off = vec![v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0), v(0.5, 0.5, 0.0)];
        assert!(matches!(
            VertexConfig::new(off, &p),
            Err(Error::NotOnSphere { index: 3, .. })
        ));
        let same = vec![v(1.0, 0.0, 0.0); 4];
        assert!(matches!(VertexConfig::new(same, &p), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_wrong_vertex_counts() {
        let p = PrecisionPolicy::default();
        let v = |x: f64, y: f64, z: f64| Point::from_f64(&[x, y, z], &p);
        let three = vec![v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0)];
        assert!(VertexConfig::new(three, &p).is_err());
    }

    #[test]
    fn projection_normalizes() {
        let p = PrecisionPolicy::default();
        let v = |x: f64, y: f64| Point::from_f64(&[x, y], &p);
        let c = VertexConfig::projected(vec![v(3.0, 4.0), v(-2.0, 0.0), v(0.0, -0.5)], &p).unwrap();
        assert!(p.approx_eq(&c.vertices()[0][0], &p.ratio(3, 5)));
    }
}
