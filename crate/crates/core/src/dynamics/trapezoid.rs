use crate::error::{Error, Result};
use crate::numerics::{Point, PrecisionPolicy, Real};
use crate::simplex::VertexConfig;

/// Isosceles trapezoid inscribed in the unit circle, symmetric about the
/// x-axis, described by the abscissas of its two vertical edges.
#[derive(Clone, Debug, PartialEq)]
pub struct TrapezoidState {
    pub a: Real,
    pub b: Real,
}

impl TrapezoidState {
    pub fn new(a: Real, b: Real, policy: &PrecisionPolicy) -> Result<Self> {
        for (name, x) in [("a", &a), ("b", &b)] {
            if x.square() >= 1 {
                return Err(Error::InvalidInput(format!(
                    "abscissa {name} = {} is not inside (-1, 1)",
                    x.to_decimal(12)
                )));
            }
        }
        if (&a - &b).abs() <= *policy.tolerance() {
            return Err(Error::InvalidInput("the two vertical edges coincide".into()));
        }
        Ok(TrapezoidState { a, b })
    }

    /// Abscissa of the centroid, `(a + b) / 2`.
    pub fn centroid_abscissa(&self) -> Real {
        (&self.a + &self.b) / 2
    }

    pub fn og_squared(&self) -> Real {
        self.centroid_abscissa().square()
    }

    /// Vertices `A = (a, +), B = (b, +), C = (b, -), D = (a, -)`, a convex
    /// cyclic order.
    pub fn to_vertices(&self, policy: &PrecisionPolicy) -> Result<VertexConfig> {
        let height = |x: &Real| (1 - x.square()).sqrt();
        let (ha, hb) = (height(&self.a), height(&self.b));
        let point = |x: &Real, y: Real| Point::new(vec![x.clone(), y]);
        VertexConfig::new_ordered(
            vec![
                point(&self.a, ha.clone()),
                point(&self.b, hb.clone()),
                point(&self.b, -hb),
                point(&self.a, -ha),
            ],
            policy,
        )
    }
}

/// `d12² - d14 d23` of the trapezoid `(a, b)`; zero when it is harmonic
/// (products of opposite sides equal).
fn harmonic_defect(a: &Real, b: &Real) -> Real {
    let (ha, hb) = ((1 - a.square()).sqrt(), (1 - b.square()).sqrt());
    let d12 = (a - b).square() + (ha - hb).square();
    d12.square() - (1 - a.square()) * (1 - b.square()) * 16
}

/// Solves for the `b` near `guess` that makes `(a, b)` harmonic, to working
/// precision (secant iteration).
pub fn harmonic_partner(a: &Real, guess: &Real, policy: &PrecisionPolicy) -> Result<Real> {
    let eps = Real::one(policy.bits()).mul_pow2(-(policy.bits() as i32) + 8);
    let mut x0 = guess.clone();
    let mut x1 = guess * (1 + policy.from_f64(1e-6));
    let mut f0 = harmonic_defect(a, &x0);
    for _ in 0..200 {
        let f1 = harmonic_defect(a, &x1);
        let slope = (&f1 - &f0) / (&x1 - &x0);
        if slope.is_zero() {
            break;
        }
        let x2 = &x1 - &f1 / slope;
        let converged = (&x2 - &x1).abs() <= eps;
        (x0, f0, x1) = (x1, f1, x2);
        if converged {
            return TrapezoidState::new(a.clone(), x1.clone(), policy).map(|_| x1);
        }
    }
    Err(Error::Domain("no harmonic partner found near the guess".into()))
}

/// Closed-form step of the abscissa pair.
pub fn step_trapezoid(st: &TrapezoidState, policy: &PrecisionPolicy) -> Result<TrapezoidState> {
    let next = |x: &Real, y: &Real| -> Result<Real> {
        let num = x.square() * y + x * y.square() * 2 + y.square() * y - x * 4;
        let den = x.square() - x * y * 2 - y.square() * 3 + 4;
        if den.abs() <= *policy.tolerance() {
            return Err(Error::Domain("trapezoid map denominator vanishes".into()));
        }
        Ok(-(num / den))
    };
    let a = next(&st.a, &st.b)?;
    let b = next(&st.b, &st.a)?;
    if a.square() >= 1 || b.square() >= 1 {
        return Err(Error::Domain("trapezoid image left the open unit interval".into()));
    }
    Ok(TrapezoidState { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::step_vertices;

    #[test]
    fn rectangles_are_fixed() {
        let p = PrecisionPolicy::default();
        for x in [0.1, 0.5, -0.7, 0.999] {
            let st = TrapezoidState::new(p.from_f64(x), p.from_f64(-x), &p).unwrap();
            let next = step_trapezoid(&st, &p).unwrap();
            assert!(p.approx_eq(&next.a, &st.a) && p.approx_eq(&next.b, &st.b));
        }
    }

    #[test]
    fn closed_form_matches_vertex_map() {
        let p = PrecisionPolicy::default();
        let st = TrapezoidState::new(p.parse("0.955").unwrap(), p.parse("0.12237784429").unwrap(), &p)
            .unwrap();
        let next = step_trapezoid(&st, &p).unwrap();
        let image = step_vertices(&st.to_vertices(&p).unwrap(), &p).unwrap().config;
        let v = image.vertices();
        // The images of B and C carry the new first abscissa.
        assert!(p.approx_eq(&v[1][0], &next.a));
        assert!(p.approx_eq(&v[2][0], &next.a));
        assert!(p.approx_eq(&v[0][0], &next.b));
        assert!(p.approx_eq(&v[3][0], &next.b));
    }

    #[test]
    fn harmonic_partner_matches_rounded_seed() {
        let p = PrecisionPolicy::default();
        let a = p.parse("0.955").unwrap();
        let b = harmonic_partner(&a, &p.parse("0.12237784429").unwrap(), &p).unwrap();
        let exact = p.parse("0.122377844290035085391494663063").unwrap();
        assert!((&b - exact).abs() < 1e-28);
        assert!(harmonic_defect(&a, &b).abs() <= *p.tolerance());
    }

    #[test]
    fn invalid_states() {
        let p = PrecisionPolicy::default();
        assert!(TrapezoidState::new(p.one(), p.zero(), &p).is_err());
        assert!(TrapezoidState::new(p.ratio(1, 2), p.ratio(1, 2), &p).is_err());
    }
}
