use std::ops::Index;

use crate::error::{Error, Result};
use crate::numerics::{PrecisionPolicy, Real};

/// A point of `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<Real>);

impl Point {
    pub fn new(coords: Vec<Real>) -> Self {
        Point(coords)
    }

    pub fn from_f64(coords: &[f64], policy: &PrecisionPolicy) -> Self {
        Point(coords.iter().map(|&c| policy.from_f64(c)).collect())
    }

    pub fn origin(dim: usize, policy: &PrecisionPolicy) -> Self {
        Point(vec![policy.zero(); dim])
    }

    /// `(cos angle, sin angle)`.
    pub fn on_circle(angle: &Real) -> Self {
        Point(vec![angle.cos(), angle.sin()])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Real] {
        &self.0
    }

    pub fn dot(&self, other: &Point) -> Real {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> Real {
        self.dot(self)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Real) -> Point {
        Point(self.0.iter().map(|a| a * factor).collect())
    }

    /// `self + factor * direction`.
    pub fn add_scaled(&self, factor: &Real, direction: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&direction.0)
                .map(|(a, d)| a + factor * d)
                .collect(),
        )
    }

    pub fn distance_squared(&self, other: &Point) -> Real {
        self.sub(other).norm_squared()
    }

    /// Mean of a non-empty set of points of equal dimension.
    pub fn centroid(points: &[Point]) -> Point {
        let dim = points[0].dim();
        let n = points.len() as i32;
        Point(
            (0..dim)
                .map(|k| points.iter().map(|p| &p.0[k]).sum::<Real>() / n)
                .collect(),
        )
    }
}

impl Index<usize> for Point {
    type Output = Real;

    fn index(&self, index: usize) -> &Real {
        &self.0[index]
    }
}

/// Second intersection of the line through `a` and `g` with the unit sphere.
///
/// `a` lies on the sphere. Parametrizing `p = a + t (g - a)`, the root `t = 0`
/// is known, so the other follows from the product of roots:
/// `t = 2 <a, a - g> / |a - g|^2`. No subtraction of nearly equal roots occurs
/// even when `g` approaches `a`.
pub fn second_sphere_intersection(a: &Point, g: &Point, policy: &PrecisionPolicy) -> Result<Point> {
    let chord = a.sub(g);
    let len2 = chord.norm_squared();
    if len2.sqrt() < *policy.tolerance() {
        return Err(Error::DegenerateRay);
    }
    let t = a.dot(&chord) * 2 / &len2;
    Ok(a.add_scaled(&-t, &chord))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antipode_through_center() {
        let p = PrecisionPolicy::default();
        let a = Point::from_f64(&[1.0, 0.0, 0.0], &p);
        let g = Point::origin(3, &p);
        let out = second_sphere_intersection(&a, &g, &p).unwrap();
        assert_eq!(out, Point::from_f64(&[-1.0, 0.0, 0.0], &p));
    }

    #[test]
    fn chord_through_off_center_point() {
        // (1 - t)^2 + t^2/9 = 1 gives t = 9/5.
        let p = PrecisionPolicy::default();
        let a = Point::from_f64(&[1.0, 0.0], &p);
        let g = Point::new(vec![p.zero(), p.ratio(1, 3)]);
        let out = second_sphere_intersection(&a, &g, &p).unwrap();
        assert!(p.approx_eq(&out[0], &p.ratio(-4, 5)));
        assert!(p.approx_eq(&out[1], &p.ratio(3, 5)));
    }

    #[test]
    fn near_tangent_centroid_stays_on_sphere() {
        let p = PrecisionPolicy::default();
        let a = Point::from_f64(&[0.0, 1.0], &p);
        for k in [10, 40, 100, 200] {
            let eps = p.one().mul_pow2(-k);
            // Tangential offset plus a tiny inward component.
            let g = Point::new(vec![eps.clone(), p.one() - eps.square()]);
            let out = second_sphere_intersection(&a, &g, &p).unwrap();
            let dev = (out.norm_squared().sqrt() - 1).abs();
            assert!(dev <= p.tol_times(8), "k = {k}: {dev:?}");
        }
    }

    #[test]
    fn coincident_centroid_is_degenerate() {
        let p = PrecisionPolicy::default();
        let a = Point::from_f64(&[0.6, 0.8], &p);
        assert_eq!(
            second_sphere_intersection(&a, &a.clone(), &p),
            Err(Error::DegenerateRay)
        );
    }
}
