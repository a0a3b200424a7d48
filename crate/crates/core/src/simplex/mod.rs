//! Metric data model of inscribed tetrahedra, cyclic quadrilaterals and
//! triangles, together with the quantities derived from their squared edge
//! lengths.
//!
//! Labeling convention for four vertices `A, B, C, D` (indices 1..=4):
//! `d12 = c^2, d13 = b^2, d14 = a'^2, d23 = a^2, d24 = b'^2, d34 = c'^2`, with
//! opposite pairs `(d12, d34)`, `(d13, d24)`, `(d14, d23)`.

mod params;
mod triangle;
mod vertices;

pub use params::{
    centroid_distances, delta, gamma, og_squared, opposite_root_sum, params_from_vertices,
    ptolemy, ptolemy_product_form, realizable, shape_class, unit_radius_residual,
    volume_squared, CentroidData, EdgeParams, ShapeClass, EDGE_LABELS, OPPOSITE_PAIRS,
};
pub(crate) use params::raw_centroid_data;
pub use triangle::{triangle_params, TriangleParams};
pub use vertices::VertexConfig;
