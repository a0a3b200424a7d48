use crate::error::{Error, Result};
use crate::numerics::{det, PrecisionPolicy, Real, SmallMatrix};
use crate::simplex::VertexConfig;

/// Field names in storage order.
pub const EDGE_LABELS: [&str; 6] = ["d12", "d13", "d14", "d23", "d24", "d34"];

/// Storage indices of the opposite pairs `(d12,d34)`, `(d13,d24)`, `(d14,d23)`.
pub const OPPOSITE_PAIRS: [(usize, usize); 3] = [(0, 5), (1, 4), (2, 3)];

/// Storage index of the edge between vertices `i` and `j` (1-based, `i != j`).
fn edge_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    match (i, j) {
        (1, 2) => 0,
        (1, 3) => 1,
        (1, 4) => 2,
        (2, 3) => 3,
        (2, 4) => 4,
        (3, 4) => 5,
        _ => panic!("no edge between vertices {i} and {j}"),
    }
}

/// Squared edge lengths `(d12, d13, d14, d23, d24, d34)` of four points on the
/// unit sphere (or unit circle).
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeParams {
    d: [Real; 6],
}

impl EdgeParams {
    /// Validated constructor: nonnegative, not all zero, realizable, and
    /// inscribed in a sphere of radius 1.
    pub fn new(d: [Real; 6], policy: &PrecisionPolicy) -> Result<Self> {
        if let Some(i) = d.iter().position(|x| x.is_sign_negative()) {
            return Err(Error::InvalidInput(format!("{} is negative", EDGE_LABELS[i])));
        }
        if d.iter().all(Real::is_zero) {
            return Err(Error::InvalidInput("all edge parameters are zero".into()));
        }
        if !realizable(&d, policy) {
            return Err(Error::NotRealizable(
                "face inequality or Cayley-Menger sign condition fails".into(),
            ));
        }
        let p = EdgeParams { d };
        let residual = unit_radius_residual(&p);
        if residual.abs() > *policy.tolerance() {
            return Err(Error::NotInscribed {
                residual: residual.to_decimal(6),
            });
        }
        Ok(p)
    }

    /// No validation; for values produced by the dynamics.
    pub fn new_unchecked(d: [Real; 6]) -> Self {
        EdgeParams { d }
    }

    pub fn parse(values: &[&str], policy: &PrecisionPolicy) -> Result<Self> {
        let d: Vec<Real> = values.iter().map(|s| policy.parse(s)).collect::<Result<_>>()?;
        let d: [Real; 6] = d.try_into().map_err(|v: Vec<Real>| {
            Error::InvalidInput(format!("expected 6 edge parameters, got {}", v.len()))
        })?;
        EdgeParams::new(d, policy)
    }

    pub fn values(&self) -> &[Real; 6] {
        &self.d
    }

    /// `d_ij` for 1-based vertex indices.
    pub fn get(&self, i: usize, j: usize) -> &Real {
        &self.d[edge_index(i, j)]
    }

    pub fn d12(&self) -> &Real {
        &self.d[0]
    }
    pub fn d13(&self) -> &Real {
        &self.d[1]
    }
    pub fn d14(&self) -> &Real {
        &self.d[2]
    }
    pub fn d23(&self) -> &Real {
        &self.d[3]
    }
    pub fn d24(&self) -> &Real {
        &self.d[4]
    }
    pub fn d34(&self) -> &Real {
        &self.d[5]
    }

    /// `(d12 d34, d13 d24, d14 d23)`.
    pub fn pair_products(&self) -> [Real; 3] {
        OPPOSITE_PAIRS.map(|(i, j)| &self.d[i] * &self.d[j])
    }

    pub fn sum(&self) -> Real {
        self.d.iter().sum()
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &EdgeParams) -> Real {
        self.d
            .iter()
            .zip(&other.d)
            .map(|(a, b)| (a - b).abs())
            .reduce(Real::max)
            .expect("six entries")
    }
}

/// Squared centroid-to-vertex distances and the power of the centroid.
#[derive(Clone, Debug, PartialEq)]
pub struct CentroidData {
    /// `g[i] = |G A_i|^2`.
    pub g: [Real; 4],
    /// `1 - |OG|^2`, the mean of the `g[i]`.
    pub p0: Real,
    /// `|OG|^2`.
    pub og2: Real,
}

impl CentroidData {
    /// `p0^4 / (g1 g2 g3 g4)`, at least 1 by AM-GM.
    pub fn lambda(&self) -> Real {
        let prod = self.g.iter().skip(1).fold(self.g[0].clone(), |acc, x| acc * x);
        self.p0.powi(4) / prod
    }
}

/// Edge parameters of a 4-vertex configuration (tetrahedron or cyclic
/// quadrilateral), in the configuration's vertex order.
pub fn params_from_vertices(c: &VertexConfig) -> Result<EdgeParams> {
    if c.len() != 4 || !(c.dim() == 2 || c.dim() == 3) {
        return Err(Error::InvalidInput(format!(
            "edge parameters need 4 vertices in dimension 2 or 3, got {} in dimension {}",
            c.len(),
            c.dim()
        )));
    }
    let v = c.vertices();
    let d = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].map(|(i, j)| v[i].distance_squared(&v[j]));
    Ok(EdgeParams::new_unchecked(d))
}

/// `|OG|^2 = 1 - (sum of squared edges) / 16`.
pub fn og_squared(p: &EdgeParams) -> Real {
    1 - p.sum() / 16
}

/// `g_i` without sign checks.
pub(crate) fn raw_centroid_data(p: &EdgeParams) -> CentroidData {
    let total = p.sum();
    // g_i = 3/16 (edges at vertex i) - 1/16 (edges of the opposite face).
    let g = [1usize, 2, 3, 4].map(|i| {
        let incident: Real = (1..=4).filter(|&j| j != i).map(|j| p.get(i, j)).sum();
        let opposite = &total - &incident;
        (incident * 3 - opposite) / 16
    });
    let p0: Real = g.iter().sum::<Real>() / 4;
    let og2 = 1 - &p0;
    CentroidData { g, p0, og2 }
}

/// Squared centroid-to-vertex distances from the edge parameters alone.
pub fn centroid_distances(p: &EdgeParams, policy: &PrecisionPolicy) -> Result<CentroidData> {
    let data = raw_centroid_data(p);
    if let Some(i) = data.g.iter().position(|g| g <= policy.tolerance()) {
        return Err(Error::NonPositiveG { index: i + 1 });
    }
    Ok(data)
}

fn cayley_menger(p: &EdgeParams, corner: Real) -> Real {
    let [d12, d13, d14, d23, d24, d34] = p.d.clone();
    let bits = corner.prec();
    let z = || Real::zero(bits);
    let o = || Real::one(bits);
    let m = SmallMatrix::from_rows([
        [corner, o(), o(), o(), o()],
        [o(), z(), d12.clone(), d13.clone(), d14.clone()],
        [o(), d12, z(), d23.clone(), d24.clone()],
        [o(), d13, d23, z(), d34.clone()],
        [o(), d14, d24, d34, z()],
    ])
    .expect("order 5");
    det(&m)
}

fn working_bits(p: &EdgeParams) -> u32 {
    p.d.iter().map(Real::prec).max().expect("six entries")
}

/// Cayley-Menger determinant, `288 V^2`.
pub fn gamma(p: &EdgeParams) -> Real {
    cayley_menger(p, Real::zero(working_bits(p)))
}

/// Determinant of the 4x4 matrix of squared distances.
pub fn delta(p: &EdgeParams) -> Real {
    let bits = working_bits(p);
    let z = || Real::zero(bits);
    let [d12, d13, d14, d23, d24, d34] = p.d.clone();
    let m = SmallMatrix::from_rows([
        [z(), d12.clone(), d13.clone(), d14.clone()],
        [d12, z(), d23.clone(), d24.clone()],
        [d13, d23, z(), d34.clone()],
        [d14, d24, d34, z()],
    ])
    .expect("order 4");
    det(&m)
}

/// Bordered determinant with corner `1/2`; equals `gamma + delta / 2` and
/// vanishes exactly when the circumradius is 1.
pub fn unit_radius_residual(p: &EdgeParams) -> Real {
    cayley_menger(p, Real::ratio(1, 2, working_bits(p)))
}

pub fn volume_squared(p: &EdgeParams) -> Real {
    gamma(p) / 288
}

/// `-delta`, through the degree-8 polynomial in the pair products (no square
/// roots).
pub fn ptolemy(p: &EdgeParams) -> Real {
    let [cc, bb, aa] = p.pair_products();
    let cross = (&aa * &bb + &bb * &cc + &cc * &aa) * 2;
    cross - aa.square() - bb.square() - cc.square()
}

/// `(bb'+cc'-aa')(cc'+aa'-bb')(aa'+bb'-cc')(aa'+bb'+cc')`.
pub fn ptolemy_product_form(p: &EdgeParams) -> Real {
    let [cc, bb, aa] = p.pair_products().map(|x| x.sqrt());
    (&bb + &cc - &aa) * (&cc + &aa - &bb) * (&aa + &bb - &cc) * (aa + bb + cc)
}

/// `aa' + bb' + cc'`, at most 8 on the unit sphere.
pub fn opposite_root_sum(p: &EdgeParams) -> Real {
    p.pair_products().iter().map(Real::sqrt).sum()
}

/// Whether six squared lengths are those of a (possibly flat) tetrahedron:
/// face `ABC` has nonnegative `16 S^2` and the Cayley-Menger determinant is
/// nonnegative.
pub fn realizable(d: &[Real; 6], policy: &PrecisionPolicy) -> bool {
    if d.iter().any(Real::is_sign_negative) {
        return false;
    }
    let tol = policy.tolerance();
    let (a2, b2, c2) = (&d[3], &d[1], &d[0]);
    let face = (a2 * b2 + b2 * c2 + c2 * a2) * 2 - a2.square() - b2.square() - c2.square();
    if face < -tol {
        return false;
    }
    gamma(&EdgeParams::new_unchecked(d.clone())) >= -tol
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    /// Opposite edges equal, non-planar.
    Isosceles,
    /// Opposite edges equal, planar.
    Rectangle,
    Generic,
}

pub fn shape_class(p: &EdgeParams, policy: &PrecisionPolicy) -> ShapeClass {
    let balanced = OPPOSITE_PAIRS
        .iter()
        .all(|&(i, j)| policy.approx_eq(&p.d[i], &p.d[j]));
    if !balanced {
        ShapeClass::Generic
    } else if gamma(p) > *policy.tolerance() {
        ShapeClass::Isosceles
    } else {
        ShapeClass::Rectangle
    }
}
