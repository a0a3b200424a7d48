use crate::dynamics::Orbit;
use crate::error::{Error, Result};
use crate::numerics::{PrecisionPolicy, Real};
use crate::simplex::{gamma, EdgeParams, TriangleParams, OPPOSITE_PAIRS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitRegime {
    Tetra,
    Quad,
}

/// Closed-form limit of the edge-parameter orbit: an isosceles tetrahedron
/// (or a rectangle), up to the two-cycle of the vertex map.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitPrediction {
    pub regime: LimitRegime,
    pub d12_inf: Real,
    pub d13_inf: Real,
    pub d14_inf: Real,
    /// Common factor with `d_inf² = L · d_ij · d_kl` over opposite pairs.
    pub l_factor: Real,
    /// Predicted geometric rate of `OG_n`.
    pub rate_r: Real,
}

impl LimitPrediction {
    /// The limit as edge parameters (opposite edges equal).
    pub fn limit_params(&self) -> EdgeParams {
        EdgeParams::new_unchecked([
            self.d12_inf.clone(),
            self.d13_inf.clone(),
            self.d14_inf.clone(),
            self.d14_inf.clone(),
            self.d13_inf.clone(),
            self.d12_inf.clone(),
        ])
    }

    /// Largest entrywise distance between `p` and the predicted limit.
    pub fn max_deviation(&self, p: &EdgeParams) -> Real {
        p.max_abs_diff(&self.limit_params())
    }

    fn limits(&self) -> [&Real; 3] {
        [&self.d12_inf, &self.d13_inf, &self.d14_inf]
    }
}

fn rate(limits: [&Real; 3]) -> Real {
    limits
        .into_iter()
        .map(|d| (d - 2).abs() / 2)
        .reduce(Real::max)
        .expect("three limits")
}

/// Limit of a non-planar tetrahedron:
/// `L = 64 / (√(d12 d34) + √(d13 d24) + √(d14 d23))²`.
pub fn tetra_limit(p: &EdgeParams, policy: &PrecisionPolicy) -> Result<LimitPrediction> {
    if gamma(p) <= *policy.tolerance() {
        return Err(Error::PlanarInput);
    }
    let products = p.pair_products();
    let root_sum: Real = products.iter().map(Real::sqrt).sum();
    let l_factor = 64 / root_sum.square();
    let [d12_inf, d13_inf, d14_inf] = products.map(|x| (x * &l_factor).sqrt());
    let rate_r = rate([&d12_inf, &d13_inf, &d14_inf]);
    Ok(LimitPrediction {
        regime: LimitRegime::Tetra,
        d12_inf,
        d13_inf,
        d14_inf,
        l_factor,
        rate_r,
    })
}

/// Limit rectangle of a convex cyclic quadrilateral `ABCD` (diagonals `d13`,
/// `d24`): `d13_inf = 4`, `d12_inf = 4 √(d12 d34) / √(d13 d24)`.
pub fn quad_limit(p: &EdgeParams, policy: &PrecisionPolicy) -> Result<LimitPrediction> {
    if gamma(p) > *policy.tolerance() {
        return Err(Error::NonPlanarInput);
    }
    let [sides_12, diagonals, sides_14] = p.pair_products().map(|x| x.sqrt());
    // Ptolemy: the diagonal product equals the sum of the side products only
    // for the convex order.
    if (&diagonals - (&sides_12 + &sides_14)).abs() > policy.tol_times(64) {
        return Err(Error::NonConvexLabeling);
    }
    let d12_inf = &sides_12 * 4 / &diagonals;
    let d14_inf = 4 - &d12_inf;
    let rate_r = (&d12_inf - 2).abs() / 2;
    Ok(LimitPrediction {
        regime: LimitRegime::Quad,
        d13_inf: policy.int(4),
        l_factor: 16 / diagonals.square(),
        d12_inf,
        d14_inf,
        rate_r,
    })
}

/// Tetrahedron or quadrilateral limit, chosen by flatness.
pub fn predict_limit(p: &EdgeParams, policy: &PrecisionPolicy) -> Result<LimitPrediction> {
    if gamma(p) > *policy.tolerance() {
        tetra_limit(p, policy)
    } else {
        quad_limit(p, policy)
    }
}

/// Every triangle orbit converges to the equilateral triangle `(9, 27, 27)`.
pub fn triangle_limit(policy: &PrecisionPolicy) -> TriangleParams {
    let (s, t) = (policy.int(9), policy.int(27));
    TriangleParams::from_st(s, t, policy).expect("equilateral triangle is valid")
}

/// Whether the orbit limit is regular (tetrahedron: the three opposite
/// products agree and do not exceed 64/9) or a square (quadrilateral:
/// `d12 d34 = d14 d23`, at most 4). Bounds are inclusive.
pub fn is_isodynamic(p: &EdgeParams, policy: &PrecisionPolicy) -> bool {
    is_isodynamic_within(p, policy.tolerance(), policy)
}

/// [`is_isodynamic`] with an explicit tolerance on the product equalities,
/// for inputs only known to a few digits.
pub fn is_isodynamic_within(p: &EdgeParams, tolerance: &Real, policy: &PrecisionPolicy) -> bool {
    let [x, y, z] = p.pair_products();
    let close = |a: &Real, b: &Real| (a - b).abs() <= *tolerance;
    if gamma(p) > *policy.tolerance() {
        close(&x, &y) && close(&y, &z) && x <= policy.ratio(64, 9) + tolerance
    } else {
        close(&x, &z) && x <= 4 + tolerance
    }
}

/// Per-step residuals against a predicted limit.
#[derive(Clone, Debug, PartialEq)]
pub struct Residuals {
    pub step: usize,
    /// `h_ij = d_ij - d_ij_inf`, in storage order.
    pub h: [Real; 6],
    /// `Σ h_ij`, equal to `-16 og2`.
    pub delta: Real,
    /// `Σ (h_ij - h_kl)² d_ij_inf` over opposite pairs; never negative.
    pub epsilon: Real,
    /// `max |h_ij + h_kl| / |h|²`; `None` once `h` vanishes.
    pub pair_sum_ratio: Option<Real>,
}

pub fn residual_diagnostics(
    orbit: &Orbit,
    limit: &LimitPrediction,
    policy: &PrecisionPolicy,
) -> Result<Vec<Residuals>> {
    let limit_params = limit.limit_params();
    orbit
        .records
        .iter()
        .map(|r| {
            let p = r.state.edge_params(policy).ok_or_else(|| {
                Error::InvalidInput(format!("{} orbit has no edge parameters", r.state.kind()))
            })?;
            let h: [Real; 6] =
                std::array::from_fn(|k| &p.values()[k] - &limit_params.values()[k]);
            let delta: Real = h.iter().sum();
            let epsilon: Real = OPPOSITE_PAIRS
                .iter()
                .zip(limit.limits())
                .map(|(&(i, j), d_inf)| (&h[i] - &h[j]).square() * d_inf)
                .sum();
            let norm2: Real = h.iter().map(Real::square).sum();
            let pair_sum_ratio = (!norm2.is_zero()).then(|| {
                OPPOSITE_PAIRS
                    .iter()
                    .map(|&(i, j)| (&h[i] + &h[j]).abs())
                    .reduce(Real::max)
                    .expect("three pairs")
                    / &norm2
            });
            Ok(Residuals { step: r.step, h, delta, epsilon, pair_sum_ratio })
        })
        .collect()
}
