use crate::error::{Error, Result};
use crate::numerics::{second_sphere_intersection, PrecisionPolicy, Real};
use crate::simplex::{og_squared, raw_centroid_data, EdgeParams, TriangleParams, VertexConfig};

/// Image of a vertex configuration and the largest renormalization applied to
/// bring an image vertex back onto the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexStep {
    pub config: VertexConfig,
    pub drift: Real,
}

/// Sends every vertex to the other end of its chord through the centroid.
/// Works in any dimension.
pub fn step_vertices(c: &VertexConfig, policy: &PrecisionPolicy) -> Result<VertexStep> {
    let g = c.centroid();
    let mut drift = policy.zero();
    let mut images = Vec::with_capacity(c.len());
    for v in c.vertices() {
        let image = second_sphere_intersection(v, &g, policy)?;
        let norm = image.norm_squared().sqrt();
        drift = drift.max((&norm - 1).abs());
        images.push(image.scale(&norm.recip()));
    }
    Ok(VertexStep {
        config: VertexConfig::from_images(c.dim(), images),
        drift,
    })
}

/// The same map on the squared edge lengths:
/// `d'_ij = p0² d_ij / (g_i g_j)`. Returns the new parameters and the new
/// power `p1 = (p0² / 16) Σ d_ij / (g_i g_j)`.
pub fn step_params(p: &EdgeParams, policy: &PrecisionPolicy) -> Result<(EdgeParams, Real)> {
    let tol = policy.tolerance();
    let data = raw_centroid_data(p);
    if data.p0 <= *tol {
        return Err(Error::VanishingPower);
    }
    if let Some(i) = data.g.iter().position(|g| g <= tol) {
        return Err(Error::NonPositiveG { index: i + 1 });
    }
    let p0_sq = data.p0.square();
    let g = &data.g;
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let weighted: [Real; 6] = std::array::from_fn(|k| {
        let (i, j) = pairs[k];
        &p.values()[k] / (&g[i] * &g[j])
    });
    let p1 = weighted.iter().sum::<Real>() * &p0_sq / 16;
    let next = EdgeParams::new_unchecked(weighted.map(|w| w * &p0_sq));

    let check = 1 - og_squared(&next);
    if (&check - &p1).abs() > policy.tol_times(64) {
        return Err(Error::ConsistencyFault(format!(
            "p1 = {} but 1 - OG'^2 = {}",
            p1.to_decimal(20),
            check.to_decimal(20)
        )));
    }
    Ok((next, p1))
}

/// The triangle map on `(s, t, u)`.
pub fn step_triangle(tp: &TriangleParams, policy: &PrecisionPolicy) -> Result<TriangleParams> {
    let (s, t) = (&tp.s, &tp.t);
    let s2 = s.square();
    let denom = s2.clone() * 27 - &s2 * s * 4 + s * t * 18 - t * 108;
    if denom <= *policy.tolerance() {
        return Err(Error::Domain(format!(
            "triangle map denominator {} is not positive",
            denom.to_decimal(12)
        )));
    }
    let s1 = &s2 * (t * 6 - &s2) / &denom;
    let t1 = s2.square() * t * (t * 9 - &s2 * 2) / denom.square();
    let u1 = &t1 * 4 - s1.square();
    Ok(TriangleParams::new_unchecked(s1, t1, u1))
}
