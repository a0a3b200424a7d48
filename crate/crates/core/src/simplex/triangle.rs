use crate::error::{Error, Result};
use crate::numerics::{PrecisionPolicy, Real};
use crate::simplex::VertexConfig;

/// Symmetric functions of the squared sides of a triangle inscribed in the
/// unit circle: `s = a²+b²+c²`, `t = a²b²+b²c²+c²a²`, `u = a²b²c²`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleParams {
    pub s: Real,
    pub t: Real,
    pub u: Real,
}

impl TriangleParams {
    /// Checks `u = 4t - s²`, `0 < s <= 9` and `s²/4 <= t <= s²/3`. Flat
    /// triangles (`t = s²/4`) are accepted.
    pub fn new(s: Real, t: Real, u: Real, policy: &PrecisionPolicy) -> Result<Self> {
        let tol = policy.tolerance();
        let residual = &u - (&t * 4 - s.square());
        if residual.abs() > *tol {
            return Err(Error::NotUnitCircumradius {
                residual: residual.to_decimal(6),
            });
        }
        if s <= *tol || s > 9 + tol {
            return Err(Error::InvalidInput(format!("s = {} outside (0, 9]", s.to_decimal(12))));
        }
        let s2 = s.square();
        if t < &s2 / 4 - tol || t > &s2 / 3 + tol {
            return Err(Error::InvalidInput(format!(
                "t = {} outside [s^2/4, s^2/3]",
                t.to_decimal(12)
            )));
        }
        Ok(TriangleParams { s, t, u })
    }

    pub(crate) fn new_unchecked(s: Real, t: Real, u: Real) -> Self {
        TriangleParams { s, t, u }
    }

    /// `u` is derived from `s` and `t`.
    pub fn from_st(s: Real, t: Real, policy: &PrecisionPolicy) -> Result<Self> {
        let u = &t * 4 - s.square();
        TriangleParams::new(s, t, u, policy)
    }

    pub fn from_vertices(c: &VertexConfig, policy: &PrecisionPolicy) -> Result<Self> {
        if !c.is_triangle() {
            return Err(Error::InvalidInput("expected three vertices in the plane".into()));
        }
        let v = c.vertices();
        let a2 = v[1].distance_squared(&v[2]);
        let b2 = v[2].distance_squared(&v[0]);
        let c2 = v[0].distance_squared(&v[1]);
        triangle_params(&a2, &b2, &c2, policy)
    }

    /// `|OG|² = 1 - s/9`.
    pub fn og_squared(&self) -> Real {
        1 - &self.s / 9
    }

    pub fn values(&self) -> [&Real; 3] {
        [&self.s, &self.t, &self.u]
    }

    pub fn max_abs_diff(&self, other: &TriangleParams) -> Real {
        let [a, b, c] = self.values();
        let [x, y, z] = other.values();
        (a - x).abs().max((b - y).abs()).max((c - z).abs())
    }
}

/// `(s, t, u)` from squared side lengths.
pub fn triangle_params(a2: &Real, b2: &Real, c2: &Real, policy: &PrecisionPolicy) -> Result<TriangleParams> {
    if [a2, b2, c2].iter().any(|x| x.is_sign_negative()) {
        return Err(Error::InvalidInput("negative squared side".into()));
    }
    let s = a2 + b2 + c2;
    let t = a2 * b2 + b2 * c2 + c2 * a2;
    let u = a2 * b2 * c2;
    TriangleParams::new(s, t, u, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Point;

    #[test]
    fn equilateral() {
        let p = PrecisionPolicy::default();
        let three = p.int(3);
        let tp = triangle_params(&three, &three, &three, &p).unwrap();
        assert_eq!(tp, TriangleParams::new(p.int(9), p.int(27), p.int(27), &p).unwrap());
        assert_eq!(tp.og_squared(), 0);
    }

    #[test]
    fn right_isosceles() {
        let p = PrecisionPolicy::default();
        let tp = triangle_params(&p.int(4), &p.int(2), &p.int(2), &p).unwrap();
        assert_eq!((tp.s.clone(), tp.t.clone(), tp.u.clone()), (p.int(8), p.int(20), p.int(16)));
        assert!(p.approx_eq(&tp.og_squared(), &p.ratio(1, 9)));

        let v = |x: f64, y: f64| Point::from_f64(&[x, y], &p);
        let c = VertexConfig::new(vec![v(1.0, 0.0), v(-1.0, 0.0), v(0.0, 1.0)], &p).unwrap();
        let from_vertices = TriangleParams::from_vertices(&c, &p).unwrap();
        assert!(from_vertices.max_abs_diff(&tp) <= *p.tolerance());
        assert!(p.approx_eq(&c.centroid().norm_squared(), &tp.og_squared()));
    }

    #[test]
    fn rejects_wrong_circumradius() {
        let p = PrecisionPolicy::default();
        let one = p.one();
        assert!(matches!(
            triangle_params(&one, &one, &one, &p),
            Err(Error::NotUnitCircumradius { .. })
        ));
        assert!(TriangleParams::new(p.int(8), p.int(20), p.int(15), &p).is_err());
    }

    #[test]
    fn accepts_flat_triangles() {
        let p = PrecisionPolicy::default();
        // Two coincident vertices and their antipode: sides 4, 4, 0.
        let tp = triangle_params(&p.int(4), &p.int(4), &p.zero(), &p).unwrap();
        assert_eq!(tp.t, tp.s.square() / 4);
        assert_eq!(tp.u, 0);
    }

    #[test]
    fn rejects_out_of_range() {
        let p = PrecisionPolicy::default();
        assert!(TriangleParams::from_st(p.int(10), p.int(30), &p).is_err());
        assert!(TriangleParams::from_st(p.int(8), p.int(10), &p).is_err());
    }
}
