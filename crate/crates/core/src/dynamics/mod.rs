//! The iteration in its four coordinate systems (vertices in any dimension,
//! tetrahedron/quadrilateral edge parameters, triangle `(s, t, u)`, isosceles
//! trapezoid abscissas) and an orbit runner that records per-step diagnostics.

mod maps;
mod orbit;
mod trapezoid;

pub use maps::{step_params, step_triangle, step_vertices, VertexStep};
pub use orbit::{
    run_orbit, run_orbit_with, Orbit, OrbitOptions, OrbitRecord, OrbitState, Termination,
};
pub use trapezoid::{harmonic_partner, step_trapezoid, TrapezoidState};
